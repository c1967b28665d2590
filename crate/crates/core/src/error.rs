use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input or a violated operation precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// An exhaustive search would exceed its declared budget.
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: u64 },
    /// A named clause of an operation contract does not hold.
    #[error("precondition `{clause}` failed: {detail}")]
    Precondition { clause: &'static str, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
