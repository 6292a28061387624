//! Paired Monte Carlo comparison of estimators.
//!
//! Every replication draws one series and fits all estimators to it, so the
//! errors of the reference estimator (the MLE) and of each alternative come
//! in pairs. Relative efficiency uses a delta-method interval on `log R`;
//! closeness uses a Wald interval. Intervals are per grid point.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::ma1::{simulate_ma1, Ma1Estimates, Ma1Estimator};
use crate::math;
use crate::mele::PriorSpec;
use crate::numerics::{normal_quantile, simpson_rule, RngStream};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 19_990_401;
/// Confidence level of the reported intervals.
pub const DEFAULT_CONF: f64 = 0.999;
/// Absolute-error difference below which a replication counts as a tie.
pub const TIE_TOL: f64 = 1e-12;
/// Fewest replications accepted for interval estimates.
pub const MIN_REPS: usize = 30;

/// Squared and absolute errors of two estimators over the same replications.
/// `a` is the reference estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedErrors {
    pub sq_a: Vec<f64>,
    pub sq_b: Vec<f64>,
    pub abs_a: Vec<f64>,
    pub abs_b: Vec<f64>,
    pub theta: f64,
    pub seed: u64,
}

impl PairedErrors {
    pub fn from_estimates(a: &[f64], b: &[f64], theta: f64, seed: u64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(domain!("paired estimates differ in length: {} vs {}", a.len(), b.len()));
        }
        let abs_a: Vec<f64> = a.iter().map(|x| (x - theta).abs()).collect();
        let abs_b: Vec<f64> = b.iter().map(|x| (x - theta).abs()).collect();
        Ok(Self {
            sq_a: abs_a.iter().map(|e| e * e).collect(),
            sq_b: abs_b.iter().map(|e| e * e).collect(),
            abs_a,
            abs_b,
            theta,
            seed,
        })
    }

    pub fn n_rep(&self) -> usize {
        self.sq_a.len()
    }

    /// The same pairs with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            sq_a: self.sq_b.clone(),
            sq_b: self.sq_a.clone(),
            abs_a: self.abs_b.clone(),
            abs_b: self.abs_a.clone(),
            theta: self.theta,
            seed: self.seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.sq_a.len();
        if self.sq_b.len() != n || self.abs_a.len() != n || self.abs_b.len() != n {
            return Err(domain!("paired error vectors differ in length"));
        }
        if n < MIN_REPS {
            return Err(domain!("need at least {MIN_REPS} replications, got {n}"));
        }
        let bad = |v: &[f64]| v.iter().any(|x| !(*x >= 0.0) || !x.is_finite());
        if bad(&self.sq_a) || bad(&self.sq_b) || bad(&self.abs_a) || bad(&self.abs_b) {
            return Err(domain!("errors must be finite and nonnegative"));
        }
        Ok(())
    }
}

/// A point estimate with a two-sided confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

fn z_for(conf: f64) -> Result<f64> {
    if !(conf > 0.0 && conf < 1.0) {
        return Err(domain!("confidence level must lie in (0, 1), got {conf}"));
    }
    normal_quantile(0.5 + 0.5 * conf)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// `R = mean(sq_a) / mean(sq_b)` with a delta-method interval on `log R`.
///
/// The variance of `log R` is estimated as the sample variance of
/// `sq_a / mean(sq_a) - sq_b / mean(sq_b)` divided by `n_rep`, which expands
/// to the usual `Va/ma^2 + Vb/mb^2 - 2 Cab/(ma mb)` but is exactly zero for
/// proportional errors.
pub fn relative_efficiency(pe: &PairedErrors, conf: f64) -> Result<Interval> {
    pe.validate()?;
    let z = z_for(conf)?;
    let (ma, mb) = (mean(&pe.sq_a), mean(&pe.sq_b));
    if !(ma > 0.0) || !(mb > 0.0) {
        return Err(Error::DegenerateData("zero mean squared error".into()));
    }
    let n = pe.n_rep() as f64;
    let d: Vec<f64> = pe.sq_a.iter().zip(&pe.sq_b).map(|(a, b)| a / ma - b / mb).collect();
    let md = mean(&d);
    let var = d.iter().map(|x| (x - md) * (x - md)).sum::<f64>() / (n - 1.0);
    let se = math::sqrt(var / n);
    let r = ma / mb;
    Ok(Interval { estimate: r, lo: r * math::exp(-z * se), hi: r * math::exp(z * se) })
}

/// `Pr{|a| < |b|} + Pr{tie} / 2` with a Wald interval clipped to `[0, 1]`.
pub fn pmc_empirical(pe: &PairedErrors, conf: f64) -> Result<Interval> {
    pe.validate()?;
    let z = z_for(conf)?;
    let (mut wins, mut ties) = (0usize, 0usize);
    for (a, b) in pe.abs_a.iter().zip(&pe.abs_b) {
        if (a - b).abs() <= TIE_TOL {
            ties += 1;
        } else if a < b {
            wins += 1;
        }
    }
    let n = pe.n_rep() as f64;
    let p = (2 * wins + ties) as f64 / (2.0 * n);
    let half = z * math::sqrt(p * (1.0 - p) / n);
    Ok(Interval { estimate: p, lo: (p - half).max(0.0), hi: (p + half).min(1.0) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    MeleVsMle,
    BayesVsMle,
}

impl Comparison {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::MeleVsMle => "mele_vs_mle",
            Comparison::BayesVsMle => "bayes_vs_mle",
        }
    }
}

/// Metrics of one alternative against the MLE at one parameter value.
/// `r = mse_mle / mse_alt`, `pmc = PMC(alternative, mle)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonPoint {
    pub comparison: Comparison,
    pub theta: f64,
    pub mse_mle: f64,
    pub mse_alt: f64,
    pub r: f64,
    pub r_lo: f64,
    pub r_hi: f64,
    pub pmc: f64,
    pub pmc_lo: f64,
    pub pmc_hi: f64,
    pub n_rep: usize,
    pub seed: u64,
}

impl ComparisonPoint {
    /// Compares the alternative `b` against the reference `a` of `pe`.
    pub fn from_paired(comparison: Comparison, pe: &PairedErrors, conf: f64) -> Result<Self> {
        let r = relative_efficiency(pe, conf)?;
        let pmc = pmc_empirical(&pe.swapped(), conf)?;
        Ok(Self {
            comparison,
            theta: pe.theta,
            mse_mle: mean(&pe.sq_a),
            mse_alt: mean(&pe.sq_b),
            r: r.estimate,
            r_lo: r.lo,
            r_hi: r.hi,
            pmc: pmc.estimate,
            pmc_lo: pmc.lo,
            pmc_hi: pmc.hi,
            n_rep: pe.n_rep(),
            seed: pe.seed,
        })
    }
}

/// One MA(1) simulation study.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub thetas: Vec<f64>,
    pub n: usize,
    pub n_rep: usize,
    pub seed: u64,
    /// Prior of the Bayes estimator.
    pub prior: PriorSpec,
    pub estimate_mean: bool,
    pub sigma_a: f64,
    pub conf: f64,
    /// Simpson panels on `[-1, 1]` for the mean likelihood and posterior mean.
    pub panels: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            thetas: theta_grid(0.05).expect("static grid"),
            n: 50,
            n_rep: 10_000,
            seed: DEFAULT_SEED,
            prior: PriorSpec::JEFFREYS_MA1,
            estimate_mean: false,
            sigma_a: 1.0,
            conf: DEFAULT_CONF,
            panels: 100,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.thetas.is_empty() {
            return Err(domain!("parameter grid is empty"));
        }
        if let Some(t) = self.thetas.iter().find(|t| !(t.abs() <= 1.0)) {
            return Err(domain!("grid value {t} outside [-1, 1]"));
        }
        if self.n < 2 {
            return Err(domain!("series length must be at least 2, got {}", self.n));
        }
        if self.n_rep < MIN_REPS {
            return Err(domain!("need at least {MIN_REPS} replications, got {}", self.n_rep));
        }
        if !(self.sigma_a > 0.0) {
            return Err(domain!("innovation standard deviation must be positive"));
        }
        z_for(self.conf)?;
        if self.panels == 0 {
            return Err(domain!("quadrature needs at least one panel"));
        }
        Ok(())
    }

    pub fn estimator(&self) -> Result<Ma1Estimator> {
        Ma1Estimator::new(simpson_rule(self.panels, -1.0, 1.0)?, self.prior)
    }

    /// Stream of replication `rep` at grid index `point`. Each grid point owns
    /// a contiguous block of `n_rep` stream indices.
    pub fn stream(&self, point: usize, rep: usize) -> RngStream {
        RngStream::new(self.seed, (point as u64) * (self.n_rep as u64) + rep as u64)
    }
}

/// `-1, -1 + step, ..., 1`; `step` must divide 1 into a whole number of parts.
pub fn theta_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(domain!("grid step must lie in (0, 1], got {step}"));
    }
    let parts = libm::round(1.0 / step);
    if (parts * step - 1.0).abs() > 1e-9 {
        return Err(domain!("grid step {step} does not divide 1"));
    }
    let parts = parts as i64;
    Ok((-parts..=parts).map(|i| i as f64 / parts as f64).collect())
}

/// Everything measured at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub theta: f64,
    pub mele: ComparisonPoint,
    pub bayes: ComparisonPoint,
    /// Fraction of replications with the MLE on `+1`.
    pub pileup_pos: f64,
    /// Fraction of replications with the MLE on `-1`.
    pub pileup_neg: f64,
}

/// Simulates and fits replication `rep` at grid index `point`.
pub fn replicate(cfg: &SimConfig, est: &mut Ma1Estimator, point: usize, rep: usize) -> Result<Ma1Estimates> {
    let theta = cfg.thetas[point];
    let series = simulate_ma1(theta, cfg.n, cfg.sigma_a, cfg.stream(point, rep), cfg.estimate_mean)?;
    est.estimate(&series.z)
}

/// Reduces the fits of one grid point, taken in replication order.
pub fn summarize(cfg: &SimConfig, point: usize, fits: &[Ma1Estimates]) -> Result<GridResult> {
    let theta = cfg.thetas[point];
    let mle: Vec<f64> = fits.iter().map(|e| e.mle).collect();
    let mele: Vec<f64> = fits.iter().map(|e| e.mele).collect();
    let bayes: Vec<f64> = fits.iter().map(|e| e.bayes).collect();
    let n = fits.len() as f64;
    let on = |side: f64| fits.iter().filter(|e| e.mle_on_boundary && e.mle * side > 0.0).count() as f64 / n;
    Ok(GridResult {
        theta,
        mele: ComparisonPoint::from_paired(
            Comparison::MeleVsMle,
            &PairedErrors::from_estimates(&mle, &mele, theta, cfg.seed)?,
            cfg.conf,
        )?,
        bayes: ComparisonPoint::from_paired(
            Comparison::BayesVsMle,
            &PairedErrors::from_estimates(&mle, &bayes, theta, cfg.seed)?,
            cfg.conf,
        )?,
        pileup_pos: on(1.0),
        pileup_neg: on(-1.0),
    })
}

/// Runs the whole study on the calling thread.
pub fn sweep(cfg: &SimConfig) -> Result<Vec<GridResult>> {
    cfg.validate()?;
    let mut est = cfg.estimator()?;
    (0..cfg.thetas.len())
        .map(|point| {
            let fits = (0..cfg.n_rep)
                .map(|rep| replicate(cfg, &mut est, point, rep))
                .collect::<Result<Vec<_>>>()?;
            summarize(cfg, point, &fits)
        })
        .collect()
}
