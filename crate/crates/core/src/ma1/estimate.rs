use crate::error::{domain, Error, Result};
use crate::mele::{self, LikelihoodCurve, PriorSpec};
use crate::numerics::{maximize_scalar, simpson_rule, QuadratureRule};
use crate::EstimateTriple;

use super::NewboldWorkspace;

/// `(MLE, MELE, posterior mean)` for one series.
pub type Ma1Estimates = EstimateTriple;

/// `|mle| >= 1 - BOUNDARY_TOL` counts as a boundary estimate.
pub const BOUNDARY_TOL: f64 = 1e-6;
/// Bracket width at which the MLE refinement stops.
pub const MLE_TOL: f64 = 1e-8;

/// Reusable estimator: a fixed quadrature rule and prior plus likelihood
/// scratch space, for fitting many series of any length.
#[derive(Debug, Clone)]
pub struct Ma1Estimator {
    rule: QuadratureRule,
    prior: PriorSpec,
    work: NewboldWorkspace,
}

impl Ma1Estimator {
    pub fn new(rule: QuadratureRule, prior: PriorSpec) -> Result<Self> {
        if rule.lower() != -1.0 || rule.upper() != 1.0 {
            return Err(domain!("MA(1) quadrature must cover [-1, 1]"));
        }
        Ok(Self { rule, prior, work: NewboldWorkspace::new() })
    }

    /// The 201-node Simpson rule on `[-1, 1]`.
    pub fn with_default_rule(prior: PriorSpec) -> Self {
        let rule = simpson_rule(100, -1.0, 1.0).expect("static rule");
        Self { rule, prior, work: NewboldWorkspace::new() }
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn prior(&self) -> PriorSpec {
        self.prior
    }

    pub fn estimate(&mut self, z: &[f64]) -> Result<Ma1Estimates> {
        if z.len() < 2 {
            return Err(domain!("MA(1) estimation needs at least two observations, got {}", z.len()));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(domain!("series contains a non-finite value"));
        }
        if z.iter().all(|&v| v == 0.0) {
            return Err(Error::DegenerateData("all observations are zero".into()));
        }
        let work = &mut self.work;
        let best = maximize_scalar(|t| work.loglik(t, z), -1.0, 1.0, MLE_TOL)?;
        let mut curve = LikelihoodCurve::new(|t| work.loglik(t, z), -1.0, 1.0)?;
        let mele = mele::mele(&mut curve, &self.rule)?;
        let bayes = mele::posterior_mean(&mut curve, self.prior, &self.rule)?;
        Ok(EstimateTriple {
            mle: best.argmax,
            mele,
            bayes,
            mle_on_boundary: best.argmax.abs() >= 1.0 - BOUNDARY_TOL,
        })
    }
}

/// MLE by bounded global maximization of the exact likelihood; mean
/// likelihood and posterior mean on `rule`.
pub fn estimate_ma1(z: &[f64], rule: &QuadratureRule, prior: PriorSpec) -> Result<Ma1Estimates> {
    Ma1Estimator::new(rule.clone(), prior)?.estimate(z)
}
