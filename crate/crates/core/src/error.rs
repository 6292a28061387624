use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A function returned a non-finite value at a quadrature or scan node.
    #[error("non-finite function value at node {node}")]
    NonFinite { node: f64 },
    /// Every likelihood value vanished after log-domain stabilization.
    #[error("degenerate likelihood curve: no node carries positive likelihood")]
    DegenerateCurve,
    /// Data that carry no information (all-zero series, etc).
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    /// A density was evaluated outside its support.
    #[error("{x} lies outside the support")]
    Support { x: f64 },
}

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
