use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("line {line}: {message}")]
    PointsFile { line: usize, message: String },

    #[error("zero ideal has no least degree")]
    ZeroIdeal,

    #[error("interpolation scan exceeded degree cap {cap}")]
    ScanCapExceeded { cap: u32 },

    #[error("computation exceeded its time budget")]
    Timeout,

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("cache file {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
