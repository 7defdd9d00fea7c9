use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    /// Malformed rational, gap rule, exponent set or factorization text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Index outside the exponent set (finite specs) or outside u64 range.
    #[error("range error: {0}")]
    Range(String),

    /// An operation was called outside its domain, e.g. a rewriting step that
    /// does not apply or a routine that assumes r < 1 on a monoid with r >= 1.
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
