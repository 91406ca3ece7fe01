use thiserror::Error;

/// Errors raised by the exact arithmetic and transform layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GvError {
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("unsupported in the Q backend: {0}")]
    UnsupportedBackend(String),

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("incompatible context: {0}")]
    IncompatibleContext(String),

    #[error("truncation unsound: {0}")]
    TruncationUnsound(String),

    #[error("incomplete local data: {0}")]
    IncompleteLocalData(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl GvError {
    /// Stable machine-readable tag, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            GvError::InvalidTruncation(_) => "invalid_truncation",
            GvError::UnsupportedBackend(_) => "unsupported_backend",
            GvError::SymmetryViolation(_) => "symmetry_violation",
            GvError::Domain(_) => "domain",
            GvError::IncompatibleContext(_) => "incompatible_context",
            GvError::TruncationUnsound(_) => "truncation_unsound",
            GvError::IncompleteLocalData(_) => "incomplete_local_data",
            GvError::InternalConsistency(_) => "internal_consistency",
            GvError::Parse(_) => "parse",
        }
    }
}

pub type Result<T, E = GvError> = std::result::Result<T, E>;
