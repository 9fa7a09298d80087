use num_bigint::BigInt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not unimodular over the integers (det = {det})")]
    Unimodularity { det: BigInt },

    #[error("relations are not admissible: {0}")]
    NonAdmissible(String),

    #[error("resolution did not terminate within {cap} steps")]
    CapExceeded { cap: usize },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// True for errors that signal the engine could not finish (as opposed to bad input).
    pub fn is_engine_limit(&self) -> bool {
        matches!(
            self,
            Error::Unimodularity { .. } | Error::CapExceeded { .. } | Error::NonAdmissible(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
