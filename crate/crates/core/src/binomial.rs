//! Bernoulli trials: closed-form estimators and exact risks by enumeration.

use crate::error::{domain, Result};
use crate::math;

/// `x` successes in `n` trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinomialData {
    x: u64,
    n: u64,
}

impl BinomialData {
    pub fn new(x: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain!("binomial data need at least one trial"));
        }
        if x > n {
            return Err(domain!("{x} successes exceed {n} trials"));
        }
        Ok(Self { x, n })
    }

    pub fn successes(&self) -> u64 {
        self.x
    }

    pub fn trials(&self) -> u64 {
        self.n
    }
}

pub type BinomialEstimator = fn(BinomialData) -> f64;

/// `X / n`.
pub fn mle_p(d: BinomialData) -> f64 {
    d.x as f64 / d.n as f64
}

/// `(X + 1) / (n + 2)`, the mean of the normalized likelihood.
pub fn mele_p(d: BinomialData) -> f64 {
    (d.x as f64 + 1.0) / (d.n as f64 + 2.0)
}

/// `(1 + 4X) / (2 + 4n)`.
pub fn bayes_p(d: BinomialData) -> f64 {
    (1.0 + 4.0 * d.x as f64) / (2.0 + 4.0 * d.n as f64)
}

fn check(n: u64, p: f64) -> Result<()> {
    if n == 0 {
        return Err(domain!("binomial risk needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(domain!("success probability {p} outside [0, 1]"));
    }
    Ok(())
}

/// Calls `visit(data, probability)` for every outcome with positive
/// probability. Probabilities are formed in the log domain.
fn for_each_outcome<V: FnMut(BinomialData, f64)>(n: u64, p: f64, mut visit: V) {
    if p == 0.0 || p == 1.0 {
        let x = if p == 0.0 { 0 } else { n };
        visit(BinomialData { x, n }, 1.0);
        return;
    }
    let nf = n as f64;
    let (lp, lq) = (math::ln(p), math::ln(1.0 - p));
    let ln_n_fact = math::ln_gamma(nf + 1.0);
    for x in 0..=n {
        let xf = x as f64;
        let log_pmf =
            ln_n_fact - math::ln_gamma(xf + 1.0) - math::ln_gamma(nf - xf + 1.0) + xf * lp + (nf - xf) * lq;
        visit(BinomialData { x, n }, math::exp(log_pmf));
    }
}

/// `E (est - p)^2` by summing over all outcomes.
pub fn mse_exact<E: Fn(BinomialData) -> f64>(estimator: E, n: u64, p: f64) -> Result<f64> {
    check(n, p)?;
    let mut mse = 0.0;
    for_each_outcome(n, p, |d, prob| {
        let e = estimator(d) - p;
        mse += prob * e * e;
    });
    Ok(mse)
}

/// `MSE(mle) / MSE(alt)`; values above 1 favour `alt`.
pub fn rel_eff_exact<E: Fn(BinomialData) -> f64>(alt: E, n: u64, p: f64) -> Result<f64> {
    Ok(mse_exact(mle_p, n, p)? / mse_exact(alt, n, p)?)
}

/// Absolute tolerance under which two estimates count as tied.
pub const TIE_TOL: f64 = 1e-12;

/// Modified Pitman closeness `Pr{|a - p| < |b - p|} + Pr{tie} / 2`.
pub fn pmc_exact<A, B>(est_a: A, est_b: B, n: u64, p: f64) -> Result<f64>
where
    A: Fn(BinomialData) -> f64,
    B: Fn(BinomialData) -> f64,
{
    check(n, p)?;
    let (mut wins, mut ties, mut total) = (0.0, 0.0, 0.0);
    for_each_outcome(n, p, |d, prob| {
        let da = (est_a(d) - p).abs();
        let db = (est_b(d) - p).abs();
        if (da - db).abs() <= TIE_TOL {
            ties += prob;
        } else if da < db {
            wins += prob;
        }
        total += prob;
    });
    // normalizing by the summed pmf makes an all-tie comparison exactly 1/2
    Ok((wins + 0.5 * ties) / total)
}

/// Open interval of `p` on which the mean likelihood estimate has smaller
/// mean-square error than `X / n`:
/// `(2n + 1 -+ sqrt(2n^2 + 3n + 1)) / (2 (2n + 1))`.
pub fn efficiency_interval_mele(n: u64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(domain!("n must be at least 1"));
    }
    let n = n as f64;
    let centre = 2.0 * n + 1.0;
    let half = math::sqrt(2.0 * n * n + 3.0 * n + 1.0);
    Ok(((centre - half) / (2.0 * centre), (centre + half) / (2.0 * centre)))
}

/// Same for `(1 + 4X) / (2 + 4n)`:
/// `(1 + 5n -+ sqrt(1 + 9n + 20n^2)) / (2 (1 + 5n))`.
pub fn efficiency_interval_bayes(n: u64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(domain!("n must be at least 1"));
    }
    let n = n as f64;
    let centre = 1.0 + 5.0 * n;
    let half = math::sqrt(1.0 + 9.0 * n + 20.0 * n * n);
    Ok(((centre - half) / (2.0 * centre), (centre + half) / (2.0 * centre)))
}
