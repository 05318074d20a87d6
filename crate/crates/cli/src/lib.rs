//! Command-line front end of `branchlink`: input parsing, the end-to-end
//! analysis and its text and JSON reports.

pub mod input;
pub mod pipeline;
pub mod report;

use thiserror::Error;

pub use input::parse_generators;
pub use pipeline::{analyze, bp_report, Analysis};
pub use report::AnalysisReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for rejected input, 1 for anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<branchlink::Error> for CliError {
    fn from(e: branchlink::Error) -> Self {
        if e.is_invalid_input() {
            CliError::Invalid(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

/// Seed of the `i`-th list in a `random` stream.
pub fn item_seed(seed: u64, i: u64) -> u64 {
    seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
