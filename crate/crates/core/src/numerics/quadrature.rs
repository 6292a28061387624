use alloc::vec::Vec;

use crate::error::{domain, Error, Result};

/// Composite Simpson rule on `[a, b]` with `k` panels (`2k + 1` nodes).
///
/// The weights are stored as the bare `1, 4, 2, 4, ..., 4, 1` pattern; the
/// `(b - a) / (6k)` scale is only applied by [`integrate`]. Ratios of two
/// sums over the same rule (posterior means, mean likelihood) never need it.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
    panels: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// Factor turning a weighted sum into an integral.
    pub fn scale(&self) -> f64 {
        (self.b - self.a) / (6.0 * self.panels as f64)
    }

    /// `(node, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// The same panel count laid over a different interval.
    pub fn with_interval(&self, a: f64, b: f64) -> Result<Self> {
        simpson_rule(self.panels, a, b)
    }
}

pub fn simpson_rule(k: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if k < 1 {
        return Err(domain!("Simpson rule needs at least one panel"));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain!("Simpson rule needs finite a < b, got [{a}, {b}]"));
    }
    let m = 2 * k;
    let nodes = (0..=m)
        .map(|i| {
            if i == m {
                b
            } else {
                a + (b - a) * i as f64 / m as f64
            }
        })
        .collect();
    let weights = (0..=m)
        .map(|i| match i {
            0 => 1.0,
            i if i == m => 1.0,
            i if i % 2 == 1 => 4.0,
            _ => 2.0,
        })
        .collect();
    Ok(QuadratureRule { nodes, weights, a, b, panels: k })
}

/// `(b - a) / (6k) * sum(w_i f(x_i))`.
pub fn integrate<F: FnMut(f64) -> f64>(rule: &QuadratureRule, mut f: F) -> Result<f64> {
    let mut sum = 0.0;
    for (x, w) in rule.iter() {
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::NonFinite { node: x });
        }
        sum += w * y;
    }
    Ok(rule.scale() * sum)
}
