//! Library half of the `metgraph` command-line tool: the graph text format,
//! point syntax, deterministic number/CSV formatting, and the report
//! builders behind each subcommand. The binary in `main.rs` is a thin
//! argument-parsing shell over [`report`].

pub mod format;
pub mod parse;
pub mod report;

use thiserror::Error;

/// Failures are split by who is at fault: bad input exits 1, a violated
/// internal assertion exits 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}
