//! Batch experiments: configuration, sweeps and tabular output.

mod config;
mod runner;
mod table;

pub use config::{ExperimentConfig, Format, Mode};
pub use runner::{run, run_clicks, run_collapse_check, run_efficiency_sweep, run_entropy_sweep, CLICK_Z_LIMIT};
pub use table::{Cell, Meta, Table};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Physics(#[from] crate::Error),
}
