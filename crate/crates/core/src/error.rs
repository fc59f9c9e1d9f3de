//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the documented domain (negative power, coefficient out
    /// of range, non-finite value, ...). Validation is strict and
    /// front-loaded; operations never silently repair out-of-domain inputs.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A covariance model is singular on the requested variables, signalling
    /// a deterministic dependence (for example a zero-variance auxiliary or
    /// a correlation of exactly one).
    #[error("degenerate covariance: {0}")]
    Degenerate(String),

    /// A numerical procedure failed to meet its accuracy contract
    /// (quadrature non-convergence, singular sample covariance, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
