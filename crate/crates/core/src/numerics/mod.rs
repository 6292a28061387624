//! Shared numerical kernels.

mod special;
mod optimize;
mod quadrature;
mod rng;

pub use special::{normal_quantile, reg_incomplete_gamma_p};
pub use optimize::{maximize_scalar, Maximum, SCAN_POINTS};
pub use quadrature::{integrate, simpson_rule, QuadratureRule};
pub use rng::{GaussianStream, RngStream};
