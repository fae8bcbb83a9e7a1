use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("truncation overflow: cannot create above level {0}")]
    Truncation(usize),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
