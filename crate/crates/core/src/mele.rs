//! Mean-likelihood and posterior-mean estimation on a bounded interval.
//!
//! Every estimate here is a ratio of two weighted sums over the nodes of a
//! [`QuadratureRule`]. Log-likelihoods are shifted by their largest node value
//! before exponentiation, so curves whose log-likelihood runs to several
//! hundred in magnitude (long MA(1) series) stay representable.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::math;
use crate::numerics::QuadratureRule;

/// A log-likelihood over a closed interval `[lower, upper]`.
///
/// `-inf` is accepted as "zero likelihood"; NaN and `+inf` are rejected at
/// evaluation time.
#[derive(Debug, Clone)]
pub struct LikelihoodCurve<F> {
    loglik: F,
    lower: f64,
    upper: f64,
}

impl<F: FnMut(f64) -> f64> LikelihoodCurve<F> {
    pub fn new(loglik: F, lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) || !lower.is_finite() || !upper.is_finite() {
            return Err(domain!("likelihood domain must be a finite interval, got [{lower}, {upper}]"));
        }
        Ok(Self { loglik, lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn loglik(&mut self, theta: f64) -> f64 {
        (self.loglik)(theta)
    }

    pub fn contains(&self, theta: f64) -> bool {
        (self.lower..=self.upper).contains(&theta)
    }

    fn check_rule(&self, rule: &QuadratureRule) -> Result<()> {
        let tol = 1e-12 * (self.upper - self.lower);
        if (rule.lower() - self.lower).abs() > tol || (rule.upper() - self.upper).abs() > tol {
            return Err(domain!(
                "rule interval [{}, {}] differs from curve domain [{}, {}]",
                rule.lower(),
                rule.upper(),
                self.lower,
                self.upper
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PriorKind {
    Uniform,
    /// `1 / sqrt(p (1 - p))` on `[0, 1]`.
    JeffreysBinomial,
    /// `1 / mu` on `(0, inf)`.
    JeffreysExponential,
    /// `1 / sqrt(1 - theta^2)` on `[-1, 1]`.
    JeffreysMa1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PriorSpec {
    pub kind: PriorKind,
}

impl PriorSpec {
    pub const UNIFORM: Self = Self { kind: PriorKind::Uniform };
    pub const JEFFREYS_BINOMIAL: Self = Self { kind: PriorKind::JeffreysBinomial };
    pub const JEFFREYS_EXPONENTIAL: Self = Self { kind: PriorKind::JeffreysExponential };
    pub const JEFFREYS_MA1: Self = Self { kind: PriorKind::JeffreysMa1 };

    pub fn new(kind: PriorKind) -> Self {
        Self { kind }
    }

    /// Log prior density up to an additive constant.
    pub fn log_weight(&self, theta: f64) -> f64 {
        match self.kind {
            PriorKind::Uniform => 0.0,
            PriorKind::JeffreysBinomial => -0.5 * math::ln(theta * (1.0 - theta)),
            PriorKind::JeffreysExponential => -math::ln(theta),
            PriorKind::JeffreysMa1 => -0.5 * math::ln(1.0 - theta * theta),
        }
    }

    /// Centre and radius `(c, r)` when the density is the arcsine law
    /// `1 / sqrt((theta - c + r)(c + r - theta))`. Under
    /// `theta = c + r sin(phi)` the density times the Jacobian is exactly 1.
    fn arcsine(&self) -> Option<(f64, f64)> {
        match self.kind {
            PriorKind::JeffreysBinomial => Some((0.5, 0.5)),
            PriorKind::JeffreysMa1 => Some((0.0, 1.0)),
            PriorKind::Uniform | PriorKind::JeffreysExponential => None,
        }
    }
}

/// Node parameters and unnormalized, stabilized `w_i * L(theta_i) * pi(theta_i)`.
struct Weighted {
    theta: Vec<f64>,
    mass: Vec<f64>,
}

impl Weighted {
    fn from_logs(theta: Vec<f64>, weights: &[f64], logs: Vec<f64>) -> Result<Self> {
        let mut top = f64::NEG_INFINITY;
        for (&t, &l) in theta.iter().zip(&logs) {
            if l.is_nan() || l == f64::INFINITY {
                return Err(Error::NonFinite { node: t });
            }
            top = top.max(l);
        }
        if top == f64::NEG_INFINITY {
            return Err(Error::DegenerateCurve);
        }
        let mass: Vec<f64> = weights.iter().zip(&logs).map(|(w, l)| w * math::exp(l - top)).collect();
        Ok(Self { theta, mass })
    }

    fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    fn mean(&self) -> Result<f64> {
        let total = self.total();
        if !(total > 0.0) {
            return Err(Error::DegenerateCurve);
        }
        let first: f64 = self.theta.iter().zip(&self.mass).map(|(t, m)| t * m).sum();
        Ok(first / total)
    }
}

fn weighted<F: FnMut(f64) -> f64>(curve: &mut LikelihoodCurve<F>, prior: PriorSpec, rule: &QuadratureRule) -> Result<Weighted> {
    curve.check_rule(rule)?;
    if let Some((c, r)) = prior.arcsine() {
        if curve.lower >= c - r && curve.upper <= c + r {
            let lo = math::asin(((curve.lower - c) / r).clamp(-1.0, 1.0));
            let hi = math::asin(((curve.upper - c) / r).clamp(-1.0, 1.0));
            let phi_rule = rule.with_interval(lo, hi)?;
            let theta: Vec<f64> = phi_rule
                .nodes()
                .iter()
                .map(|&phi| (c + r * math::sin(phi)).clamp(curve.lower, curve.upper))
                .collect();
            let logs = theta.iter().map(|&t| curve.loglik(t)).collect();
            return Weighted::from_logs(theta, phi_rule.weights(), logs);
        }
    }
    let theta = rule.nodes().to_vec();
    let mut logs = Vec::with_capacity(theta.len());
    for &t in &theta {
        let lw = prior.log_weight(t);
        if !lw.is_finite() {
            return Err(Error::NonFinite { node: t });
        }
        logs.push(curve.loglik(t) + lw);
    }
    Weighted::from_logs(theta, rule.weights(), logs)
}

/// Mean likelihood estimate `int theta L dtheta / int L dtheta`.
pub fn mele<F: FnMut(f64) -> f64>(curve: &mut LikelihoodCurve<F>, rule: &QuadratureRule) -> Result<f64> {
    weighted(curve, PriorSpec::UNIFORM, rule)?.mean()
}

/// Posterior mean under `prior`. Arcsine-type Jeffreys priors are integrated
/// in the angle variable, which removes their endpoint singularities exactly.
pub fn posterior_mean<F: FnMut(f64) -> f64>(
    curve: &mut LikelihoodCurve<F>,
    prior: PriorSpec,
    rule: &QuadratureRule,
) -> Result<f64> {
    weighted(curve, prior, rule)?.mean()
}

/// `int (candidate - theta)^2 L(theta) dtheta` with `L` scaled so its largest
/// node value is 1.
pub fn mean_squared_risk<F: FnMut(f64) -> f64>(
    curve: &mut LikelihoodCurve<F>,
    rule: &QuadratureRule,
    candidate: f64,
) -> Result<f64> {
    if !curve.contains(candidate) {
        return Err(domain!("candidate {candidate} outside [{}, {}]", curve.lower, curve.upper));
    }
    let w = weighted(curve, PriorSpec::UNIFORM, rule)?;
    let sum: f64 = w.theta.iter().zip(&w.mass).map(|(t, m)| (candidate - t) * (candidate - t) * m).sum();
    Ok(rule.scale() * sum)
}

/// `int L(theta) dtheta` under the same stabilization as [`mean_squared_risk`].
pub fn likelihood_mass<F: FnMut(f64) -> f64>(curve: &mut LikelihoodCurve<F>, rule: &QuadratureRule) -> Result<f64> {
    Ok(rule.scale() * weighted(curve, PriorSpec::UNIFORM, rule)?.total())
}
