use thiserror::Error;

/// Errors produced by the algebra, solver and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable {var} out of range 1..={n}")]
    VarOutOfRange { var: u32, n: u32 },
    #[error("variable index 0 is not a valid literal")]
    ZeroVariable,
    #[error("assignment has length {got}, expected {expected}")]
    AssignmentLength { expected: u32, got: u32 },
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("{what} needs n = {n}, above the configured limit {limit}")]
    GuardLimit {
        what: &'static str,
        n: u32,
        limit: u32,
    },
    #[error("coefficient overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid ksat parameters: k = {k}, n = {n}")]
    InvalidK { k: u32, n: u32 },
    #[error("variable {0} is not live in the signed sum")]
    NotLive(u32),
    #[error("empty problem: at least one clause is required after normalization")]
    EmptyProblem,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
