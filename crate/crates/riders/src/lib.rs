//! Std companion to `riders-core`: text syntax, JSON/CSV reports, parallel
//! drivers, the `riders` command line and the reproduction suite.

pub mod cli;
pub mod config;
pub mod formats;
pub mod parallel;
pub mod parse;
pub mod verify;

pub use riders_core as core;

/// Everything the front end can fail with. Exit codes: 2 usage, 3 capacity, 1 otherwise.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] riders_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Core(e) if e.is_capacity() => 3,
            Error::Core(
                riders_core::Error::EmptyMoveSet
                | riders_core::Error::ZeroMove(..)
                | riders_core::Error::NotCoprime(..)
                | riders_core::Error::ParallelMoves(..)
                | riders_core::Error::InvalidBoard(_)
                | riders_core::Error::InvalidArgument(_)
                | riders_core::Error::NotTwoMoves(_),
            ) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "capacity",
            _ => match self {
                Error::Verification(_) => "verification",
                Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Format(_) => "io",
                _ => "computation",
            },
        }
    }
}
