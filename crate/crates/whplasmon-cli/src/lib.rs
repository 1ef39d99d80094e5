//! Batch front end for `whplasmon`: the split-function table, field sweeps,
//! oracle comparisons and a quick invariant suite.

pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Numerics(#[from] whplasmon::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type CliResult<T> = Result<T, CliError>;
