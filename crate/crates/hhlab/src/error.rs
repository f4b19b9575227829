//! Error type shared by every module.

use thiserror::Error;

/// Convenient result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A theorem's hypothesis fails for the requested operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The feasible Kato parameter set is empty.
    #[error("infeasible Kato parameter region: {0}")]
    Infeasible(String),

    /// A floating-point value left the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// NaN or infinity appeared in stored data.
    #[error("non-finite value at node {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    /// Two objects were built on different radial grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Picard iteration stopped contracting.
    #[error("non-contraction: measured factor {factor:.4} (T^(alpha-1)(tau_c-tau)/2 * M^(alpha-1) = {diagnostic:.4e})")]
    NonContraction { factor: f64, diagnostic: f64 },

    /// Malformed configuration text.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
