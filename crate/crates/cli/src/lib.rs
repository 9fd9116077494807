//! Command-line front end for the `polytangent` library: JSON documents,
//! subcommands and figure rendering.

pub mod commands;
pub mod document;
pub mod render;

use thiserror::Error;

/// A failed command. Input errors exit with status 2, failed hypotheses
/// with status 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Hypothesis(_) => 1,
        }
    }
}
