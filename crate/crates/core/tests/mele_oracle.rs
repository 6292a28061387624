//! The fixed Simpson rule used for every fit is checked against an
//! independent adaptive Simpson integration of the same likelihood.

use meanlik_core::compare::DEFAULT_SEED;
use meanlik_core::ma1::{newbold_loglik, simulate_ma1, Ma1Estimator};
use meanlik_core::{PriorSpec, RngStream};

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64, whole: f64, fm: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (left, flm) = simpson(f, a, fa, m, fm);
    let (right, frm) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, fa, m, fm, left, flm, tol / 2.0, depth - 1) + adaptive(f, m, fm, b, fb, right, frm, tol / 2.0, depth - 1)
}

fn integrate_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb) = (f(a), f(b));
    let (whole, fm) = simpson(f, a, fa, b, fb);
    adaptive(f, a, fa, b, fb, whole, fm, tol, 50)
}

/// Likelihood-weighted mean of theta, normalized by the peak of a coarse scan.
fn mele_oracle(z: &[f64]) -> f64 {
    let ll = |t: f64| newbold_loglik(t, z).unwrap();
    let peak = (0..=2000).map(|i| ll(-1.0 + i as f64 / 1000.0)).fold(f64::NEG_INFINITY, f64::max);
    let lik = |t: f64| (ll(t) - peak).exp();
    let num = integrate_adaptive(&|t| t * lik(t), -1.0, 1.0, 1e-13);
    let den = integrate_adaptive(&lik, -1.0, 1.0, 1e-13);
    num / den
}

#[test]
fn fixed_rule_matches_adaptive_oracle_on_simulated_series() {
    let mut est = Ma1Estimator::with_default_rule(PriorSpec::JEFFREYS_MA1);
    let mut worst = 0.0f64;
    for case in 0..100u64 {
        let theta = -0.95 + 1.9 * (case as f64) / 99.0;
        let series = simulate_ma1(theta, 50, 1.0, RngStream::new(DEFAULT_SEED, 1_000_000 + case), false).unwrap();
        let fit = est.estimate(&series.z).unwrap();
        let oracle = mele_oracle(&series.z);
        worst = worst.max((fit.mele - oracle).abs());
    }
    assert!(worst < 1e-6, "worst deviation {worst:e}");
}

#[test]
fn likelihood_matches_dense_gaussian_form_at_crate_boundary() {
    // Concentrated Gaussian log-likelihood with the tridiagonal covariance
    // factored by a plain Thomas-style LDL^T recursion.
    let dense = |theta: f64, z: &[f64]| {
        let n = z.len();
        let (diag, off) = (1.0 + theta * theta, -theta);
        let mut d = vec![0.0; n];
        let mut y = vec![0.0; n];
        d[0] = diag;
        y[0] = z[0];
        for i in 1..n {
            let l = off / d[i - 1];
            d[i] = diag - l * off;
            y[i] = z[i] - l * y[i - 1];
        }
        let q: f64 = (0..n).map(|i| y[i] * y[i] / d[i]).sum();
        let logdet: f64 = d.iter().map(|v| v.ln()).sum();
        -(n as f64) / 2.0 * (q / n as f64).ln() - 0.5 * logdet
    };
    for case in 0..20u64 {
        let theta = -0.9 + 0.09 * case as f64;
        let z = simulate_ma1(theta, 30, 1.0, RngStream::new(7, case), false).unwrap().z;
        for t in [-0.99, -0.5, 0.0, 0.3, 0.99] {
            let a = newbold_loglik(t, &z).unwrap();
            let b = dense(t, &z);
            assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()), "theta {t}: {a} vs {b}");
        }
    }
}
