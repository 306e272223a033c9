use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("matrix is not an element of {algebra}({n}): {detail}")]
    Membership { algebra: String, n: usize, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("not a root of this algebra: {0}")]
    NotARoot(String),

    #[error("{0}")]
    Usage(String),

    #[error("sampling failed: {0}")]
    Sampling(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// True for the error classes that the command line maps to exit status 2.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Membership { .. }
                | Error::Usage(_)
                | Error::OutOfRange(_)
                | Error::Unsupported(_)
                | Error::Dimension(_)
                | Error::NotARoot(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
