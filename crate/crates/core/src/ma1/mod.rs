//! Gaussian MA(1) model `Z_t = A_t - theta A_(t-1)`, `|theta| <= 1`.
//!
//! The minus sign is used throughout; a series written with the
//! `Z_t = A_t + theta A_(t-1)` convention has its parameter negated.

mod estimate;
mod exact2;
mod newbold;
mod simulate;

pub use estimate::{estimate_ma1, Ma1Estimates, Ma1Estimator, BOUNDARY_TOL, MLE_TOL};
pub use exact2::{
    bayes_n2, conc_lik_n2, density_w, mele_n2, mle_n2, pmc_n2, risk_n2, w_statistic, Metric, N2Interpolant,
    WStat, INTERP_POINTS,
};
pub use newbold::{newbold_loglik, NewboldWorkspace};
pub use simulate::{simulate_ma1, Ma1Series};
