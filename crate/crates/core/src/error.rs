//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested element family/degree combination is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A reference element could not be constructed (e.g. ill-conditioned
    /// degree-of-freedom Gram matrix, which signals a wrong spanning set).
    #[error("element construction failed: {0}")]
    Construction(String),

    /// Numerical failure at solve time (singular factorization, residual
    /// above tolerance, iteration breakdown).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Operation requires exact solution fields that the problem lacks.
    #[error("missing exact fields: {0}")]
    MissingExact(String),

    /// Mismatched dimensions between coefficient vectors and spaces.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// Run configuration is inconsistent or incomplete.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 = config error, 3 = numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::Config(_) | Error::Unsupported(_) => 2,
            Error::Numerical(_) | Error::Construction(_) | Error::Dimension { .. } => 3,
            Error::MissingExact(_) => 2,
            Error::Io(_) => 1,
        }
    }
}
