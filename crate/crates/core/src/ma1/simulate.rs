use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::numerics::RngStream;

#[derive(Debug, Clone, PartialEq)]
pub struct Ma1Series {
    pub z: Vec<f64>,
    pub theta_true: f64,
    pub sigma_a: f64,
}

/// Draws `A_0, ..., A_n` from `stream` and returns `Z_t = A_t - theta A_(t-1)`
/// for `t = 1..n`. `A_0` is random, so the series follows the stationary law.
/// With `estimate_mean` the sample average is subtracted.
pub fn simulate_ma1(theta: f64, n: usize, sigma_a: f64, stream: RngStream, estimate_mean: bool) -> Result<Ma1Series> {
    if !(-1.0..=1.0).contains(&theta) {
        return Err(domain!("MA(1) parameter {theta} outside [-1, 1]"));
    }
    if n == 0 {
        return Err(domain!("series length must be at least 1"));
    }
    if !(sigma_a > 0.0) || !sigma_a.is_finite() {
        return Err(domain!("innovation standard deviation must be positive, got {sigma_a}"));
    }
    let mut shocks = stream.gaussians().map(|e| sigma_a * e);
    let mut prev = shocks.next().unwrap_or_default();
    let mut z: Vec<f64> = shocks
        .take(n)
        .map(|a| {
            let zt = a - theta * prev;
            prev = a;
            zt
        })
        .collect();
    if estimate_mean {
        let mean = z.iter().sum::<f64>() / n as f64;
        z.iter_mut().for_each(|v| *v -= mean);
    }
    Ok(Ma1Series { z, theta_true: theta, sigma_a })
}
