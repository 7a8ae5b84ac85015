use thiserror::Error;

/// Errors raised by constructions and certificates in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("resource bound exceeded: {what} = {value} exceeds limit {limit}")]
    ResourceBound {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("verification failed: {identity}: {detail}")]
    Verification { identity: String, detail: String },

    #[error("grading closure violated for pieces ({left}, {right}): {detail}")]
    ClosureViolation {
        left: String,
        right: String,
        detail: String,
    },

    #[error("automorphisms do not commute: {0}")]
    NonCommuting(String),

    #[error("numerical separation failure: {0}")]
    NumericalSeparation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn verification(identity: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            identity: identity.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
