use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance too large for exhaustive enumeration: {0}")]
    Capacity(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
