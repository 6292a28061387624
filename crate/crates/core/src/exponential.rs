//! Exponential lifetimes: estimators of the mean that are multiples of the
//! total time on test `T`, with exact risks from the moments of
//! `T ~ Gamma(n, mu)`.

use crate::error::{domain, Result};
use crate::numerics::reg_incomplete_gamma_p;

/// Sample size and total `T = sum X_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialData {
    t: f64,
    n: u64,
}

impl ExponentialData {
    pub fn new(t: f64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain!("exponential data need at least one observation"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(domain!("total lifetime must be positive and finite, got {t}"));
        }
        Ok(Self { t, n })
    }

    pub fn from_observations(xs: &[f64]) -> Result<Self> {
        if let Some(x) = xs.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
            return Err(domain!("lifetimes must be positive and finite, got {x}"));
        }
        Self::new(xs.iter().sum(), xs.len() as u64)
    }

    pub fn total(&self) -> f64 {
        self.t
    }

    pub fn size(&self) -> u64 {
        self.n
    }
}

/// The two alternatives compared against the MLE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alternative {
    /// `T / (n - 2)`
    Mele,
    /// `T / (n - 1)`, the posterior mean under the `1 / mu` prior
    Bayes,
}

impl Alternative {
    pub fn min_n(self) -> u64 {
        match self {
            Alternative::Mele => 3,
            Alternative::Bayes => 2,
        }
    }

    pub fn divisor(self, n: u64) -> Result<f64> {
        if n < self.min_n() {
            return Err(domain!("{self:?} estimator needs n >= {}, got {n}", self.min_n()));
        }
        Ok(match self {
            Alternative::Mele => n as f64 - 2.0,
            Alternative::Bayes => n as f64 - 1.0,
        })
    }
}

pub fn mle_mu(d: ExponentialData) -> f64 {
    d.t / d.n as f64
}

/// Errors for `n <= 2`, where the likelihood `mu^-n e^(-T/mu)` has no finite
/// first moment.
pub fn mele_mu(d: ExponentialData) -> Result<f64> {
    Ok(d.t / Alternative::Mele.divisor(d.n)?)
}

pub fn bayes_mu(d: ExponentialData) -> Result<f64> {
    Ok(d.t / Alternative::Bayes.divisor(d.n)?)
}

/// `E (T / c - mu)^2 = mu^2 (n (n + 1) / c^2 - 2n / c + 1)`, evaluated as
/// `mu^2 ((n - c)^2 + n) / c^2` to avoid cancellation.
pub fn mse_scaled_gamma(c: f64, n: u64, mu: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(domain!("divisor must be positive, got {c}"));
    }
    if n == 0 {
        return Err(domain!("n must be at least 1"));
    }
    let n = n as f64;
    Ok(mu * mu * ((n - c) * (n - c) + n) / (c * c))
}

/// `MSE(T / n) / MSE(alternative)`, free of `mu`:
/// `(n - 2)^2 / (n (n + 4))` for the MELE and `(n - 1)^2 / (n (n + 1))` for Bayes.
pub fn rel_eff(which: Alternative, n: u64) -> Result<f64> {
    let c = which.divisor(n)?;
    Ok(mse_scaled_gamma(n as f64, n, 1.0)? / mse_scaled_gamma(c, n, 1.0)?)
}

pub fn rel_eff_mele(n: u64) -> Result<f64> {
    rel_eff(Alternative::Mele, n)
}

pub fn rel_eff_bayes(n: u64) -> Result<f64> {
    rel_eff(Alternative::Bayes, n)
}

/// Threshold `b` with `PMC = Pr{T < b mu}`: the alternative `T / c` (c < n)
/// is closer exactly when `mu` lies above the midpoint of `T / n` and `T / c`.
pub fn pmc_threshold(which: Alternative, n: u64) -> Result<f64> {
    which.divisor(n)?;
    let n = n as f64;
    Ok(match which {
        Alternative::Mele => n * (n - 2.0) / (n - 1.0),
        Alternative::Bayes => 2.0 * n * (n - 1.0) / (2.0 * n - 1.0),
    })
}

/// `PMC(alternative, T / n | mu) = P(n, b)`, the same for every `mu`.
pub fn pmc_vs_mle(which: Alternative, n: u64) -> Result<f64> {
    reg_incomplete_gamma_p(n as f64, pmc_threshold(which, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RngStream;

    #[test]
    fn estimators() {
        let d = ExponentialData::new(10.0, 5).unwrap();
        assert_eq!(mle_mu(d), 2.0);
        assert!((mele_mu(d).unwrap() - 10.0 / 3.0).abs() < 1e-15);
        assert_eq!(bayes_mu(d).unwrap(), 2.5);
        let two = ExponentialData::new(3.0, 2).unwrap();
        assert!(mele_mu(two).is_err());
        assert_eq!(bayes_mu(two).unwrap(), 3.0);
        assert!(bayes_mu(ExponentialData::new(3.0, 1).unwrap()).is_err());
        assert!(ExponentialData::new(0.0, 3).is_err());
        assert!(ExponentialData::from_observations(&[1.0, -1.0]).is_err());
        assert_eq!(ExponentialData::from_observations(&[1.0, 2.0, 3.0, 1.5, 2.5]).unwrap().total(), 10.0);
    }

    #[test]
    fn estimators_agree_for_large_n() {
        for n in [100u64, 1000, 10_000] {
            let t = 3.0 * n as f64;
            let d = ExponentialData::new(t, n).unwrap();
            let bound = 3.0 * t / (n as f64 * n as f64);
            assert!((mele_mu(d).unwrap() - mle_mu(d)).abs() <= bound);
            assert!((bayes_mu(d).unwrap() - mle_mu(d)).abs() <= bound);
        }
    }

    #[test]
    fn gamma_moment_risks() {
        for n in [1u64, 4, 25] {
            let got = mse_scaled_gamma(n as f64, n, 1.7).unwrap();
            assert!((got - 1.7 * 1.7 / n as f64).abs() < 1e-14);
        }
        assert!((mse_scaled_gamma(8.0, 10, 1.0).unwrap() - 0.21875).abs() < 1e-15);
        assert!((mse_scaled_gamma(9.0, 10, 1.0).unwrap() - 11.0 / 81.0).abs() < 1e-15);
        assert!(mse_scaled_gamma(0.0, 10, 1.0).is_err());
    }

    #[test]
    fn relative_efficiencies() {
        assert!((rel_eff_mele(10).unwrap() - 64.0 / 140.0).abs() < 1e-15);
        assert!((rel_eff_bayes(10).unwrap() - 81.0 / 110.0).abs() < 1e-15);
        let n = 1000.0;
        assert!((rel_eff_mele(1000).unwrap() - (1.0 - 8.0 / n + 36.0 / (n * n))).abs() < 2e-7);
        for n in 3u64..500 {
            let (m, b) = (rel_eff_mele(n).unwrap(), rel_eff_bayes(n).unwrap());
            let nf = n as f64;
            assert!((m - (nf - 2.0).powi(2) / (nf * (nf + 4.0))).abs() < 1e-14);
            assert!((b - (nf - 1.0).powi(2) / (nf * (nf + 1.0))).abs() < 1e-14);
            assert!(m < b && b < 1.0);
        }
        assert!(rel_eff_mele(2).is_err());
        assert!(rel_eff_bayes(1).is_err());
    }

    #[test]
    fn pmc_closed_forms() {
        let want = 1.0 - libm::exp(-1.5) * (1.0 + 1.5 + 1.125);
        assert!((pmc_vs_mle(Alternative::Mele, 3).unwrap() - want).abs() < 1e-12);
        assert!((want - 0.191153).abs() < 1e-6);
        let x = 4.0 / 3.0;
        let want = 1.0 - libm::exp(-x) * (1.0 + x);
        assert!((pmc_vs_mle(Alternative::Bayes, 2).unwrap() - want).abs() < 1e-12);
        assert!((want - 0.384940).abs() < 1e-6);
        for n in 3..=100 {
            assert!(pmc_vs_mle(Alternative::Mele, n).unwrap() < 0.5);
            assert!(pmc_vs_mle(Alternative::Bayes, n).unwrap() < 0.5);
        }
        assert!(pmc_vs_mle(Alternative::Mele, 2).is_err());
    }

    #[test]
    fn threshold_is_the_closeness_boundary() {
        // brute force: scan T/mu and find where the alternative stops being closer
        for which in [Alternative::Mele, Alternative::Bayes] {
            for n in [3u64, 7, 20] {
                let c = which.divisor(n).unwrap();
                let b = pmc_threshold(which, n).unwrap();
                for i in 1..20_000 {
                    let t = f64::from(i) * 3.0 * n as f64 / 20_000.0;
                    if (t - b).abs() < 1e-9 {
                        continue;
                    }
                    let closer = (t / c - 1.0).abs() < (t / n as f64 - 1.0).abs();
                    assert_eq!(closer, t < b, "{which:?} n={n} t={t} b={b}");
                }
            }
        }
    }

    #[test]
    fn small_monte_carlo_agrees() {
        // 2e5 replicates, 4 standard errors
        let n = 5u64;
        let reps = 200_000;
        let mut u = RngStream::new(11, 0).uniforms();
        let (mut s_mle, mut s_mele, mut wins) = (0.0, 0.0, 0.0);
        for _ in 0..reps {
            let t: f64 = (0..n).map(|_| -libm::log(1.0 - u.next().unwrap())).sum();
            let a = t / 5.0 - 1.0;
            let b = t / 3.0 - 1.0;
            s_mle += a * a;
            s_mele += b * b;
            if b.abs() < a.abs() {
                wins += 1.0;
            }
        }
        let r = reps as f64;
        let pmc = pmc_vs_mle(Alternative::Mele, n).unwrap();
        assert!((wins / r - pmc).abs() < 4.0 * libm::sqrt(pmc * (1.0 - pmc) / r));
        assert!((s_mle / r - 0.2).abs() < 0.01);
        assert!((s_mele / r - mse_scaled_gamma(3.0, 5, 1.0).unwrap()).abs() < 0.03);
    }
}
