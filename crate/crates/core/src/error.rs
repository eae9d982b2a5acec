use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps these onto exit statuses: [`Error::Internal`] is a
/// consistency failure (exit 2), everything else is a domain or usage
/// problem with the input (exit 1).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cycle: need at least 3 vertices, got {0}")]
    InvalidCycle(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("not a mixed graph: {0}")]
    NotMixedGraph(String),

    #[error("{mv} not applicable at vertex {vertex}: {pattern}")]
    MoveNotApplicable {
        mv: &'static str,
        vertex: usize,
        pattern: String,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::ContractViolation(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
