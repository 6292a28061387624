//! Maximum likelihood, mean likelihood and Jeffreys-prior Bayes estimators
//! for the binomial, exponential and Gaussian MA(1) models, together with the
//! machinery to compare them by mean-square error, relative efficiency and
//! Pitman's measure of closeness.
//!
//! The crate is `no_std` (it needs `alloc`). All transcendental functions go
//! through `libm`, so results are bit-identical across platforms and thread
//! schedules. File formats, the command line and parallel sweeps live in the
//! `meanlik` companion crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod binomial;
pub mod compare;
mod error;
#[cfg(test)]
extern crate std;
pub mod exponential;
pub mod ma1;
pub(crate) mod math;
pub mod mele;
pub mod numerics;

pub use error::{Error, Result};

pub use mele::{LikelihoodCurve, PriorKind, PriorSpec};
pub use numerics::{QuadratureRule, RngStream};

/// Point estimates of one parameter from one dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateTriple {
    pub mle: f64,
    pub mele: f64,
    pub bayes: f64,
    /// Set when the MLE sits on the boundary of the parameter space.
    pub mle_on_boundary: bool,
}
