use thiserror::Error;

/// Errors surfaced by the verification kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {what} = {got}, valid range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("averaging did not converge: {0}")]
    NonConvergence(String),
    #[error("word of length {got} exceeds expansion cap {cap}")]
    WordTooLong { got: usize, cap: usize },
    #[error("degenerate evaluation grid: rank {rank} < expected {expected}; dependent words: {}", dependent.join(", "))]
    DegenerateGrid {
        rank: usize,
        expected: usize,
        dependent: Vec<String>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
