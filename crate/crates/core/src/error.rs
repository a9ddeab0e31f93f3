use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed literal or file; `token` is the offending fragment.
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    /// Caller broke an API contract (mixed contexts, foreign atoms, bad prime).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input is well formed but outside the domain of the operation.
    #[error("rejected: {0}")]
    Rejected(String),

    /// A property that must hold did not; carries a concrete counterexample.
    #[error("verification failed [{check}]: {counterexample}")]
    Verification { check: String, counterexample: String },

    /// The computation would exceed a configured size cap.
    #[error("refused: {0}")]
    Refused(String),

    #[error("window [{lo}, {hi}] too narrow: need [{need_lo}, {need_hi}]")]
    WindowTooNarrow { lo: i32, hi: i32, need_lo: i32, need_hi: i32 },

    #[error("buffer invariant violated: {0}")]
    Buffer(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse { token: token.into(), reason: reason.into() }
    }

    pub fn verification(check: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Error::Verification { check: check.into(), counterexample: counterexample.into() }
    }

    /// Usage-type errors map to exit code 2, domain errors to 1.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_) | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
