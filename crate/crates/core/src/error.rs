//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("CFL violation: {0}")]
    CflViolation(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("nonpositive state: {0}")]
    NonpositiveState(String),
    #[error("initial data produce a vacuum state")]
    Vacuum,
    #[error("mesh error: {0}")]
    Mesh(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
