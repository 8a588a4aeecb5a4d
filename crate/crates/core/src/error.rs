use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("vector length {0} is not a perfect square")]
    NotSquare(usize),

    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },

    #[error("invalid system: {0}")]
    InvalidSpec(String),

    #[error("steady state not unique: {0}")]
    Singular(String),

    #[error("system is not closed: {0}")]
    NotClosed(String),

    #[error("step size {dt} exceeds stability bound {bound}")]
    StepSize { dt: f64, bound: f64 },

    #[error("integration diverged at t = {0}")]
    Diverged(f64),

    #[error("invalid argument: {0}")]
    Argument(String),
}
