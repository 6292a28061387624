//! Row builders behind each figure subcommand.

use meanlik_core::binomial::{
    bayes_p, efficiency_interval_bayes, efficiency_interval_mele, mele_p, mle_p, mse_exact, pmc_exact,
    BinomialEstimator,
};
use meanlik_core::compare::{theta_grid, Comparison, GridResult, SimConfig};
use meanlik_core::exponential::{mse_scaled_gamma, pmc_vs_mle, Alternative};
use meanlik_core::ma1::{mle_n2, pmc_n2, risk_n2, Metric, N2Interpolant};
use meanlik_core::numerics::simpson_rule;

use crate::output::{Model, OutputRow};
use crate::sweep::parallel_sweep;
use crate::{CliError, Result};

pub const BINOMIAL_NS: [u64; 2] = [10, 30];
pub const BINOMIAL_STEP: f64 = 0.005;
pub const EXPONENTIAL_NS: std::ops::RangeInclusive<u64> = 3..=100;
pub const MA1_STEP: f64 = 0.05;

/// Rows plus footer comments.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub rows: Vec<OutputRow>,
    pub footer: Vec<String>,
}

fn check_step(step: f64) -> Result<()> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(CliError::Usage(format!("--grid-step must lie in (0, 0.5], got {step}")));
    }
    Ok(())
}

/// `0, step, 2 step, ...` up to and including 1.
fn probability_grid(step: f64) -> Vec<f64> {
    let count = (1.0 / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|i| (i as f64 * step).min(1.0)).collect();
    if *grid.last().expect("nonempty") < 1.0 {
        grid.push(1.0);
    }
    grid
}

/// Exact relative efficiency and closeness of both alternatives against
/// `X / n`, with the efficiency intervals as footer lines.
pub fn binomial(ns: &[u64], step: f64) -> Result<Table> {
    check_step(step)?;
    if let Some(bad) = ns.iter().find(|&&n| n == 0) {
        return Err(CliError::Usage(format!("--n must be at least 1, got {bad}")));
    }
    let grid = probability_grid(step);
    let mut table = Table::default();
    for &n in ns {
        for (comparison, alt) in [
            (Comparison::MeleVsMle, mele_p as BinomialEstimator),
            (Comparison::BayesVsMle, bayes_p as BinomialEstimator),
        ] {
            for &p in &grid {
                let row = OutputRow::exact(
                    Model::Binomial,
                    comparison,
                    p,
                    n,
                    mse_exact(mle_p, n, p)?,
                    mse_exact(alt, n, p)?,
                    pmc_exact(alt, mle_p, n, p)?,
                );
                table.rows.push(row);
            }
        }
        let (lo, hi) = efficiency_interval_mele(n)?;
        table.footer.push(format!("efficiency_interval n={n} mele_vs_mle ({lo:.12}, {hi:.12})"));
        let (lo, hi) = efficiency_interval_bayes(n)?;
        table.footer.push(format!("efficiency_interval n={n} bayes_vs_mle ({lo:.12}, {hi:.12})"));
    }
    Ok(table)
}

/// Closed-form risks (with `mu = 1`) and closeness for each sample size.
pub fn exponential(ns: &[u64]) -> Result<Table> {
    let mut table = Table::default();
    for &n in ns {
        if n < 2 {
            return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
        }
        for (comparison, which) in [(Comparison::MeleVsMle, Alternative::Mele), (Comparison::BayesVsMle, Alternative::Bayes)] {
            if n < which.min_n() {
                continue;
            }
            table.rows.push(OutputRow::exact(
                Model::Exponential,
                comparison,
                n as f64,
                n,
                mse_scaled_gamma(n as f64, n, 1.0)?,
                mse_scaled_gamma(which.divisor(n)?, n, 1.0)?,
                pmc_vs_mle(which, n)?,
            ));
        }
    }
    Ok(table)
}

/// Exact risks and closeness for series of length two, integrating over the
/// distribution of `W`.
pub fn ma1_exact2(step: f64) -> Result<Table> {
    check_step(step)?;
    let thetas = theta_grid(step).map_err(|e| CliError::Usage(e.to_string()))?;
    let rule = simpson_rule(100, -1.0, 1.0)?;
    let mele = N2Interpolant::mele(&rule)?;
    let bayes = N2Interpolant::bayes(&rule)?;
    let mut table = Table::default();
    for (comparison, alt) in [(Comparison::MeleVsMle, &mele), (Comparison::BayesVsMle, &bayes)] {
        for &theta in &thetas {
            table.rows.push(OutputRow::exact(
                Model::Ma1Exact2,
                comparison,
                theta,
                2,
                risk_n2(mle_n2, theta, Metric::Mse)?,
                risk_n2(|w| alt.eval(w), theta, Metric::Mse)?,
                pmc_n2(|w| alt.eval(w), mle_n2, theta)?,
            ));
        }
    }
    Ok(table)
}

/// Rows of a finished simulation study, MELE block first.
pub fn sim_rows(cfg: &SimConfig, results: &[GridResult]) -> Vec<OutputRow> {
    let n = cfg.n as u64;
    let mut rows: Vec<OutputRow> =
        results.iter().map(|g| OutputRow::simulated(n, &g.mele, (g.pileup_pos, g.pileup_neg))).collect();
    rows.extend(results.iter().map(|g| OutputRow::simulated(n, &g.bayes, (g.pileup_pos, g.pileup_neg))));
    rows
}

pub fn ma1_sim(cfg: &SimConfig, threads: usize) -> Result<Table> {
    let results = parallel_sweep(cfg, threads)?;
    let prior = match cfg.prior.kind {
        meanlik_core::PriorKind::Uniform => "uniform",
        _ => "jeffreys",
    };
    Ok(Table {
        rows: sim_rows(cfg, &results),
        footer: vec![format!(
            "n={} n_rep={} seed={} prior={prior} estimate_mean={} conf={} intervals are per point",
            cfg.n, cfg.n_rep, cfg.seed, cfg.estimate_mean, cfg.conf
        )],
    })
}
