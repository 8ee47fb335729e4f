//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation requested outside a model's validity domain, or an
    /// argument violates a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Model parameters are inconsistent (empty validity domain, bad grids,
    /// malformed JSON, ...).
    #[error("invalid model: {0}")]
    Model(String),

    /// The requested operation is not defined for this model variant.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Adaptive integration gave up; `reached` is the last accepted time.
    #[error("integration failed at t = {reached}: {reason}")]
    Integration { reached: f64, reason: String },

    /// A quadratic form degenerated (AC = B² or x² <= 0).
    #[error("degenerate solution: {0}")]
    Degenerate(String),

    /// Adaptive quadrature did not converge.
    #[error("quadrature failed: {0}")]
    Quadrature(String),

    /// The iterative scheme has no valid points left (radicand <= 0
    /// everywhere).
    #[error("scheme inapplicable: {0}")]
    SchemeInapplicable(String),
}

impl Error {
    /// True for configuration-class errors (CLI exit code 1);
    /// false for numerical failures (exit code 2).
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Model(_) | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
