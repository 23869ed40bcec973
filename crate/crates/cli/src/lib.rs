//! Command-line front end: input parsing, command dispatch and reports.

pub mod commands;
pub mod input;
pub mod report;
pub mod verify;

use rootsub_core::Error;

pub use input::{InputDescription, Kind};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("{command} does not accept kind {kind}")]
    WrongKind { command: &'static str, kind: Kind },

    #[error(transparent)]
    Core(#[from] Error),

    #[error("{failed} self-check(s) failed")]
    VerifyFailed { failed: usize },
}

impl CliError {
    /// Process exit code: 2 for input and structure errors, 3 for a failed
    /// toric criterion, 4 when a search box is too small, 1 for failed
    /// self-checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NotToric { .. }) => 3,
            CliError::Core(Error::BoxTooSmall { .. }) => 4,
            CliError::VerifyFailed { .. } => 1,
            _ => 2,
        }
    }
}
