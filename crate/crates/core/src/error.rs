use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("slot index {slot} out of range 1..={max}")]
    Slot { slot: usize, max: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    /// A precondition that is itself an exact residual check failed.
    #[error("{check} residual {residual} is nonzero")]
    Residual { check: String, residual: String },
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
