use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input (polynomials, series, JSON documents).
    #[error("parse error: {0}")]
    Parse(String),
    /// An operation was called outside its domain; the message names the witness.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Truncated data is too short to certify the requested result.
    #[error("insufficient precision: {0}")]
    Precision(String),
    /// Two computations that must agree did not.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
