//! Reports over cyclic covers: invariants, classification listings, weight
//! data and regeneration of the published tables.

pub mod commands;
pub mod report;
pub mod tables;

use thiserror::Error;

pub use report::{Check, Report, TextTable};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<cyclicover_core::Error> for CliError {
    fn from(e: cyclicover_core::Error) -> Self {
        match e {
            cyclicover_core::Error::Consistency(_) => CliError::Consistency(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// How a successfully produced report should end the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    ConsistencyFailure,
    GoldenMismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::ConsistencyFailure => 3,
            Status::GoldenMismatch => 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

impl Outcome {
    /// Success when every check passes, otherwise a consistency failure.
    pub fn from_checks(report: Report) -> Self {
        let status = if report.all_passed() {
            Status::Success
        } else {
            Status::ConsistencyFailure
        };
        Outcome { report, status }
    }
}
