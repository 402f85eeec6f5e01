//! File format, benchmark sweeps and reporting for the `otfcanon` CLI.

pub mod format;
pub mod report;
pub mod run;
pub mod summary;

use format::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("run timed out")]
    Timeout,
    #[error(transparent)]
    Core(#[from] otfcanon::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl BenchError {
    /// 2 for parse errors, 3 for timeouts, 4 for contract violations, 1
    /// otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            BenchError::Parse(_) => 2,
            BenchError::Timeout | BenchError::Core(otfcanon::Error::Timeout) => 3,
            BenchError::Core(_) => 4,
            _ => 1,
        }
    }
}
