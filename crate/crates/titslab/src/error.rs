//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("duplicate element {0}")]
    DuplicateElement(u32),

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("characteristic mismatch: {0}")]
    CharMismatch(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
