use alloc::string::String;

use thiserror::Error;

/// Everything that can go wrong inside the counting engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("move set is empty")]
    EmptyMoveSet,
    #[error("move ({0},{1}) is the zero vector")]
    ZeroMove(i64, i64),
    #[error("move ({0},{1}) has non-coprime coordinates")]
    NotCoprime(i64, i64),
    #[error("moves ({0},{1}) and ({2},{3}) have the same slope")]
    ParallelMoves(i64, i64, i64, i64),
    #[error("invalid board: {0}")]
    InvalidBoard(String),
    #[error("configuration is attacking: pieces {0} and {1} share a move line or a square")]
    Attacking(usize, usize),
    #[error("capacity exceeded: {what} needs {needed} units, budget is {budget}")]
    Capacity { what: String, needed: u128, budget: u128 },
    #[error("capacity exceeded at n = {n}: {source}")]
    CapacityAt {
        n: u64,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
    #[error("insufficient data: residue {residue} mod {period} has {have} values, need {need}")]
    InsufficientData { period: u64, residue: u64, have: usize, need: usize },
    #[error("validation mismatch at n = {n}: table has {expected}, fit gives {got}")]
    ValidationMismatch { n: i64, expected: String, got: String },
    #[error("leading coefficient {got} differs from (vol B)^q/q! = {expected}")]
    LeadingCoefficient { expected: String, got: String },
    #[error("no period p <= {p_max} fits the data ({detail})")]
    NoPeriod { p_max: u64, detail: String },
    #[error("value {0} is not an integer")]
    NonIntegral(String),
    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("unknown flat {0}")]
    UnknownFlat(usize),
    #[error("move set must have exactly two moves, has {0}")]
    NotTwoMoves(usize),
    #[error("arrangement too large: {0} hyperplanes (limit 128)")]
    ArrangementTooLarge(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for the budget/capacity family, which callers usually report differently.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::CapacityAt { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
