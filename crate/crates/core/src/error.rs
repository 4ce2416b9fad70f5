use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(i64),

    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: i64,
        got: i64,
    },

    #[error("{what} = {value} lies outside {window}")]
    OutOfDomain {
        what: &'static str,
        value: String,
        window: String,
    },

    #[error("empty interval: lo = {lo} > hi = {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("malformed piecewise function: {0}")]
    Piecewise(String),

    /// A hypothesis of a construction failed; the message names the inequality.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
