use crate::rational::Rational;

/// Errors surfaced by the library. "No ranking function exists" is never an
/// error; synthesis reports it as `None`.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    /// A node budget ran out. `partial` holds the integer points collected
    /// before giving up, so callers can report progress.
    #[error("resource limit exceeded after {explored} branch nodes: {message}")]
    Resource {
        message: String,
        explored: usize,
        partial: Vec<Vec<Rational>>,
    },

    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Contract(_) => "contract",
            Error::Resource { .. } => "resource",
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
