//! Closed forms for a series of length two.
//!
//! The concentrated likelihood depends on the data only through
//! `W = -Z1 Z2 / (Z1^2 + Z2^2)`, whose density is known in closed form, so
//! risks and closeness probabilities are one-dimensional integrals over
//! `|x| < 1/2`. Those integrals are taken in `u` with `x = sin(u) / 2`, which
//! absorbs the `1 / sqrt(1 - 4x^2)` endpoint singularity.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::math;
use crate::mele::{self, LikelihoodCurve, PriorSpec};
use crate::numerics::{simpson_rule, QuadratureRule};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WStat(f64);

impl WStat {
    pub fn new(w: f64) -> Result<Self> {
        if !(w.abs() <= 0.5) {
            return Err(domain!("W must lie in [-1/2, 1/2], got {w}"));
        }
        Ok(Self(w))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn w_statistic(z1: f64, z2: f64) -> Result<WStat> {
    let ss = z1 * z1 + z2 * z2;
    if ss == 0.0 {
        return Err(Error::DegenerateData("both observations are zero".into()));
    }
    Ok(WStat((-z1 * z2 / ss).clamp(-0.5, 0.5)))
}

/// `sqrt(1 + theta^2 + theta^4) / (1 + theta^2 - 2 theta W)`.
pub fn conc_lik_n2(theta: f64, w: WStat) -> f64 {
    let t2 = theta * theta;
    math::sqrt(1.0 + t2 + t2 * t2) / (1.0 + t2 - 2.0 * theta * w.0)
}

/// Closed-form maximizer of [`conc_lik_n2`]; `+-1` whenever `|W| >= 1/4`.
pub fn mle_n2(w: WStat) -> f64 {
    let w = w.0;
    if w <= -0.25 {
        -1.0
    } else if w >= 0.25 {
        1.0
    } else if w == 0.0 {
        0.0
    } else {
        // (1 - sqrt(1 - 16 w^2)) / (4w), rationalized to stay accurate near 0
        4.0 * w / (1.0 + math::sqrt(1.0 - 16.0 * w * w))
    }
}

/// Density of `W` at `x` when the true parameter is `theta`.
pub fn density_w(x: f64, theta: f64) -> Result<f64> {
    if !(x.abs() < 0.5) {
        return Err(Error::Support { x });
    }
    if !(theta.abs() <= 1.0) {
        return Err(domain!("MA(1) parameter {theta} outside [-1, 1]"));
    }
    let t2 = theta * theta;
    Ok(2.0 * math::sqrt(1.0 + t2 + t2 * t2) / (PI * math::sqrt(1.0 - 4.0 * x * x) * (1.0 + t2 - 2.0 * theta * x)))
}

/// Density of `u` where `W = sin(u) / 2`, `u` in `[-pi/2, pi/2]`.
fn density_u(u: f64, theta: f64) -> f64 {
    let t2 = theta * theta;
    math::sqrt(1.0 + t2 + t2 * t2) / (PI * (1.0 + t2 - theta * math::sin(u)))
}

fn n2_curve(w: WStat) -> Result<LikelihoodCurve<impl FnMut(f64) -> f64>> {
    LikelihoodCurve::new(move |theta| math::ln(conc_lik_n2(theta, w)), -1.0, 1.0)
}

/// Mean likelihood estimate for a length-two series.
pub fn mele_n2(w: WStat, rule: &QuadratureRule) -> Result<f64> {
    mele::mele(&mut n2_curve(w)?, rule)
}

/// Posterior mean under the `1 / sqrt(1 - theta^2)` prior.
pub fn bayes_n2(w: WStat, rule: &QuadratureRule) -> Result<f64> {
    mele::posterior_mean(&mut n2_curve(w)?, PriorSpec::JEFFREYS_MA1, rule)
}

/// Grid size of [`N2Interpolant`] over `[-1/2, 1/2]`.
pub const INTERP_POINTS: usize = 401;

/// Tabulated estimator `W -> theta` with local cubic interpolation.
#[derive(Debug, Clone)]
pub struct N2Interpolant {
    values: Vec<f64>,
}

impl N2Interpolant {
    pub fn from_fn<F: FnMut(WStat) -> Result<f64>>(mut f: F) -> Result<Self> {
        let last = (INTERP_POINTS - 1) as f64;
        let values = (0..INTERP_POINTS)
            .map(|i| f(WStat((i as f64 / last - 0.5).clamp(-0.5, 0.5))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    pub fn mele(rule: &QuadratureRule) -> Result<Self> {
        Self::from_fn(|w| mele_n2(w, rule))
    }

    pub fn bayes(rule: &QuadratureRule) -> Result<Self> {
        Self::from_fn(|w| bayes_n2(w, rule))
    }

    /// Four-point Lagrange interpolation on the cell containing `w`.
    pub fn eval(&self, w: WStat) -> f64 {
        let last = INTERP_POINTS - 1;
        let s = (w.0 + 0.5) * last as f64;
        let cell = (libm::floor(s) as usize).min(last - 1);
        let start = cell.saturating_sub(1).min(last - 3);
        let t = s - start as f64;
        let y = &self.values[start..start + 4];
        let (t0, t1, t2, t3) = (t, t - 1.0, t - 2.0, t - 3.0);
        -y[0] * t1 * t2 * t3 / 6.0 + y[1] * t0 * t2 * t3 / 2.0 - y[2] * t0 * t1 * t3 / 2.0 + y[3] * t0 * t1 * t2 / 6.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `E (est - theta)^2`
    Mse,
    /// `E |est - theta|`
    Abs,
}

const PANELS_PER_PIECE: usize = 200;
// W = -1/4, 0, 1/4: where the closed-form MLE changes branch
const KINKS: [f64; 5] = [-FRAC_PI_2, -PI / 6.0, 0.0, PI / 6.0, FRAC_PI_2];

fn check_theta(theta: f64) -> Result<()> {
    if !(theta.abs() <= 1.0) {
        return Err(domain!("MA(1) parameter {theta} outside [-1, 1]"));
    }
    Ok(())
}

/// Simpson integration over `[lo, hi]` after `u = mid - half * cos(pi * s)`.
/// The substitution clusters nodes at both ends, where the MLE branches meet
/// with square-root behaviour; the transformed integrand is smooth there.
fn integrate_u<G: FnMut(f64) -> f64>(lo: f64, hi: f64, panels: usize, mut g: G) -> Result<f64> {
    if !(hi > lo) {
        return Ok(0.0);
    }
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let rule = simpson_rule(panels, 0.0, 1.0)?;
    crate::numerics::integrate(&rule, |s| {
        let jac = half * PI * math::sin(PI * s);
        if jac == 0.0 {
            return 0.0;
        }
        g((mid - half * math::cos(PI * s)).clamp(lo, hi)) * jac
    })
}

fn at(u: f64) -> WStat {
    WStat((0.5 * math::sin(u)).clamp(-0.5, 0.5))
}

/// Risk of an estimator `W -> theta_hat` of a length-two series, by
/// integrating against the density of `W`. The range is split where the
/// closed-form MLE has kinks.
pub fn risk_n2<E: FnMut(WStat) -> f64>(mut estimator: E, theta: f64, metric: Metric) -> Result<f64> {
    check_theta(theta)?;
    let mut total = 0.0;
    for piece in KINKS.windows(2) {
        total += integrate_u(piece[0], piece[1], PANELS_PER_PIECE, |u| {
            let e = estimator(at(u)) - theta;
            let loss = match metric {
                Metric::Mse => e * e,
                Metric::Abs => e.abs(),
            };
            loss * density_u(u, theta)
        })?;
    }
    Ok(total)
}

/// Tie tolerance for closeness comparisons.
const TIE_TOL: f64 = 1e-12;
const SCAN_CELLS: usize = 400;
const ROOT_TOL: f64 = 1e-10;

/// `Pr{|a - theta| < |b - theta|} + Pr{tie} / 2` for a length-two series.
///
/// The sign of `|a - theta| - |b - theta|` is scanned on a fine `u` grid,
/// every change is located by bisection, and the density is integrated over
/// each piece on which the comparison outcome is constant.
pub fn pmc_n2<A, B>(mut est_a: A, mut est_b: B, theta: f64) -> Result<f64>
where
    A: FnMut(WStat) -> f64,
    B: FnMut(WStat) -> f64,
{
    check_theta(theta)?;
    let mut class = |u: f64| -> i8 {
        let w = at(u);
        let g = (est_a(w) - theta).abs() - (est_b(w) - theta).abs();
        if g.abs() <= TIE_TOL {
            0
        } else if g < 0.0 {
            -1
        } else {
            1
        }
    };

    let mut cuts: Vec<f64> = Vec::with_capacity(16);
    cuts.push(-FRAC_PI_2);
    let step = PI / SCAN_CELLS as f64;
    let mut left = -FRAC_PI_2;
    let mut c_left = class(left);
    for i in 1..=SCAN_CELLS {
        let right = if i == SCAN_CELLS { FRAC_PI_2 } else { -FRAC_PI_2 + step * i as f64 };
        let c_right = class(right);
        if c_right != c_left {
            let (mut lo, mut hi) = (left, right);
            while hi - lo > ROOT_TOL {
                let mid = 0.5 * (lo + hi);
                if class(mid) == c_left {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            cuts.push(0.5 * (lo + hi));
        }
        left = right;
        c_left = c_right;
    }
    cuts.push(FRAC_PI_2);

    let mut pmc = 0.0;
    let mut mass = 0.0;
    for piece in cuts.windows(2) {
        let p = integrate_u(piece[0], piece[1], PANELS_PER_PIECE, |u| density_u(u, theta))?;
        mass += p;
        match class(0.5 * (piece[0] + piece[1])) {
            -1 => pmc += p,
            0 => pmc += 0.5 * p,
            _ => {}
        }
    }
    // normalize by the integrated mass so an all-tie comparison is exactly 1/2
    Ok(pmc / mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RngStream;

    fn w(x: f64) -> WStat {
        WStat::new(x).unwrap()
    }

    #[test]
    fn w_values() {
        assert_eq!(w_statistic(1.0, -1.0).unwrap().value(), 0.5);
        assert_eq!(w_statistic(1.0, 0.0).unwrap().value(), 0.0);
        assert_eq!(w_statistic(1.0, 1.0).unwrap().value(), -0.5);
        assert!(matches!(w_statistic(0.0, 0.0), Err(Error::DegenerateData(_))));
        assert!(WStat::new(0.51).is_err());
    }

    #[test]
    fn likelihood_values() {
        for x in [-0.5, 0.0, 0.3] {
            assert_eq!(conc_lik_n2(0.0, w(x)), 1.0);
        }
        assert!((conc_lik_n2(1.0, w(0.5)) - libm::sqrt(3.0)).abs() < 1e-15);
        for (t, x) in [(0.3, 0.2), (-0.8, 0.45), (1.0, -0.1)] {
            assert!((conc_lik_n2(t, w(x)) - conc_lik_n2(-t, w(-x))).abs() < 1e-15);
        }
    }

    #[test]
    fn proportional_to_newbold() {
        for (z1, z2) in [(0.7, -0.2), (1.3, 0.9), (-0.4, 2.2)] {
            let ww = w_statistic(z1, z2).unwrap();
            let offset = super::super::newbold_loglik(0.0, &[z1, z2]).unwrap() - libm::log(conc_lik_n2(0.0, ww));
            for theta in [-1.0, -0.55, 0.2, 0.9, 1.0] {
                let nb = super::super::newbold_loglik(theta, &[z1, z2]).unwrap();
                assert!((nb - libm::log(conc_lik_n2(theta, ww)) - offset).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mle_branches() {
        assert_eq!(mle_n2(w(0.0)), 0.0);
        assert!((mle_n2(w(0.2)) - 0.5).abs() < 1e-15);
        assert_eq!(mle_n2(w(0.3)), 1.0);
        assert_eq!(mle_n2(w(-0.4)), -1.0);
        // continuity at the branch points
        for x in [0.25f64, -0.25] {
            let inner = mle_n2(w(x - x.signum() * 1e-12));
            assert!((inner - x.signum()).abs() < 1e-5);
        }
        assert!(mle_n2(w(1e-13)).abs() < 1e-9);
        assert!((mle_n2(w(0.25 - 1e-18)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mle_maximizes_the_likelihood() {
        for i in -50..=50 {
            let x = f64::from(i) / 100.0;
            let m = mle_n2(w(x));
            let best = conc_lik_n2(m, w(x));
            for j in -200..=200 {
                assert!(conc_lik_n2(f64::from(j) / 200.0, w(x)) <= best * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn density_values() {
        assert!((density_w(0.0, 0.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        assert!(matches!(density_w(0.5, 0.0), Err(Error::Support { .. })));
        for (x, t) in [(0.1, 0.4), (-0.45, 1.0), (0.3, -0.7)] {
            assert!((density_w(x, t).unwrap() - density_w(-x, -t).unwrap()).abs() < 1e-14);
        }
        for theta in [-1.0, 0.0, 0.5, 1.0] {
            let total = risk_n2(|_| theta + 1.0, theta, Metric::Mse).unwrap();
            assert!((total - 1.0).abs() < 1e-8, "{theta}: {total}");
        }
    }

    #[test]
    fn mele_and_bayes_shape() {
        let rule = simpson_rule(100, -1.0, 1.0).unwrap();
        assert!(mele_n2(w(0.0), &rule).unwrap().abs() < 1e-14);
        assert!(bayes_n2(w(0.0), &rule).unwrap().abs() < 1e-14);
        for x in [0.05, 0.2, 0.37, 0.5] {
            let a = mele_n2(w(x), &rule).unwrap();
            let b = mele_n2(w(-x), &rule).unwrap();
            assert!((a + b).abs() < 1e-14);
            assert!(a > 0.0 && a < 1.0);
            let c = bayes_n2(w(x), &rule).unwrap();
            assert!(c > 0.0 && c < 1.0);
        }
    }

    #[test]
    fn interpolant_tracks_direct_quadrature() {
        let rule = simpson_rule(100, -1.0, 1.0).unwrap();
        let mele = N2Interpolant::mele(&rule).unwrap();
        let bayes = N2Interpolant::bayes(&rule).unwrap();
        let mut u = RngStream::new(5, 0).uniforms();
        for i in 0..2000 {
            let x = if i < 3 { [-0.5, 0.5, 0.0][i] } else { u.next().unwrap() - 0.5 };
            assert!((mele.eval(w(x)) - mele_n2(w(x), &rule).unwrap()).abs() < 1e-6);
            assert!((bayes.eval(w(x)) - bayes_n2(w(x), &rule).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn risk_and_pmc_basics() {
        for theta in [-1.0, -0.3, 0.0, 0.8] {
            assert_eq!(risk_n2(|_| theta, theta, Metric::Mse).unwrap(), 0.0);
            assert_eq!(pmc_n2(mle_n2, mle_n2, theta).unwrap(), 0.5);
        }
        let ab = pmc_n2(|_| 0.1, mle_n2, 0.4).unwrap();
        let ba = pmc_n2(mle_n2, |_| 0.1, 0.4).unwrap();
        assert!((ab + ba - 1.0).abs() < 1e-9);
        assert!(risk_n2(mle_n2, 1.5, Metric::Mse).is_err());
    }

    #[test]
    fn pmc_against_constant_has_closed_form() {
        // at theta = 0 the constant 0 is strictly closer unless W = 0; the tie
        // sliver around W = 0 is only resolved to the bisection tolerance
        assert!((pmc_n2(|_| 0.0, mle_n2, 0.0).unwrap() - 1.0).abs() < 1e-9);
        // PMC(mle, 1 | theta = 1): the MLE ties on W >= 1/4 and loses elsewhere
        let tie = 1.0 - cdf_w(0.25, 1.0);
        let got = pmc_n2(mle_n2, |_| 1.0, 1.0).unwrap();
        assert!((got - 0.5 * tie).abs() < 1e-8, "{got} vs {}", 0.5 * tie);
    }

    // oracle: cumulative distribution of W by dense midpoint rule in u
    fn cdf_w(x: f64, theta: f64) -> f64 {
        let top = libm::asin(2.0 * x);
        let m = 200_000;
        let h = (top + FRAC_PI_2) / f64::from(m);
        (0..m).map(|i| density_u(-FRAC_PI_2 + (f64::from(i) + 0.5) * h, theta) * h).sum()
    }

    #[test]
    fn mle_risk_matches_simulation() {
        let exact = risk_n2(mle_n2, 0.0, Metric::Mse).unwrap();
        let reps = 1_000_000u64;
        let mut g = RngStream::new(2024, 0).gaussians();
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..reps {
            let (z1, z2) = (g.next().unwrap(), g.next().unwrap());
            let e = mle_n2(w_statistic(z1, z2).unwrap());
            s1 += e * e;
            s2 += e * e * e * e;
        }
        let r = reps as f64;
        let mean = s1 / r;
        let se = libm::sqrt((s2 / r - mean * mean) / r);
        assert!((mean - exact).abs() < 3.0 * se, "{mean} vs {exact} (se {se})");
    }
}
