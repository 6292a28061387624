use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::math;

/// Scratch space for repeated likelihood evaluations on one series.
#[derive(Debug, Clone, Default)]
pub struct NewboldWorkspace {
    alpha: Vec<f64>,
}

impl NewboldWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact concentrated log-likelihood `-(n/2) log(S/n) - (1/2) log D`.
    ///
    /// `alpha_0 = 0`, `alpha_j = theta alpha_(j-1) + z_j`;
    /// `D = sum_(j=0..n) theta^(2j)`; `u = -(sum theta^j alpha_j) / D` by
    /// Horner's rule; `S = sum_(j=0..n) (alpha_j + theta^j u)^2`.
    /// `z` must not be identically zero.
    pub fn loglik(&mut self, theta: f64, z: &[f64]) -> f64 {
        let n = z.len();
        self.alpha.clear();
        self.alpha.reserve(n + 1);
        self.alpha.push(0.0);
        let theta_sq = theta * theta;
        let (mut a, mut d, mut pow2) = (0.0, 1.0, 1.0);
        for &zj in z {
            a = theta * a + zj;
            self.alpha.push(a);
            pow2 *= theta_sq;
            d += pow2;
        }
        let horner = self.alpha.iter().rev().fold(0.0, |acc, &a| acc * theta + a);
        let u = -horner / d;
        let (mut s, mut pow) = (0.0, 1.0);
        for &a in &self.alpha {
            let r = a + pow * u;
            s += r * r;
            pow *= theta;
        }
        let nf = n as f64;
        -0.5 * nf * math::ln(s / nf) - 0.5 * math::ln(d)
    }
}

pub fn newbold_loglik(theta: f64, z: &[f64]) -> Result<f64> {
    if z.is_empty() {
        return Err(domain!("MA(1) likelihood needs at least one observation"));
    }
    if !(-1.0..=1.0).contains(&theta) {
        return Err(domain!("MA(1) parameter {theta} outside [-1, 1]"));
    }
    if z.iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateData("all observations are zero".into()));
    }
    Ok(NewboldWorkspace::new().loglik(theta, z))
}
