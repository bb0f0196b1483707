//! Experiment runner: reproduces the solver studies from flat key=value
//! configs and emits CSV artifacts.

pub mod config;
pub mod csv;
pub mod experiments;

pub use config::{Experiment, GridKind, RunConfig};
pub use experiments::run_experiment;

/// Runner errors carrying the process exit code contract: 2 for config
/// problems, 3 for solver breakdown.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(std::io::Error),
    Solver(mhd_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Solver(e) => write!(f, "solver breakdown: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<mhd_core::Error> for CliError {
    fn from(e: mhd_core::Error) -> Self {
        CliError::Solver(e)
    }
}
