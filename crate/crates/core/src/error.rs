use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("regularity error: {0}")]
    Regularity(String),
    #[error("evenness error: {0}")]
    Evenness(String),
    #[error("degree mismatch: expected {expected}, found {found} ({context})")]
    Degree {
        expected: i64,
        found: i64,
        context: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
