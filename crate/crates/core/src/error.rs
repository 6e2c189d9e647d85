use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operand dimensions are incompatible.
    #[error("shape error: {0}")]
    Shape(String),
    /// Input violates a documented precondition (positivity, idempotency, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Bad command-line or API usage (unknown names, missing arguments).
    #[error("usage error: {0}")]
    Usage(String),
    /// A randomized generator exhausted its retry budget.
    #[error("generation error: {0}")]
    Generation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
