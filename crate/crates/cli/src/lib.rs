//! Library side of the `m2s2` command: ingestion, batch runs, output
//! formats, plotting and synthetic fixtures.

pub mod config;
pub mod fixtures;
pub mod ingest;
pub mod output;
pub mod plot;
pub mod run;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or configuration; maps to exit code 2.
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Core(#[from] m2s2::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
