//! Experiment harness for fair clustering: CSV ingestion, sweeps over k for
//! the classical and fairlet-based pipelines, and JSON/CSV reports.

pub mod config;
pub mod error;
pub mod load;
pub mod report;
pub mod sweep;

pub use config::{ExperimentConfig, KRange, ObjectiveChoice, SweepConfig};
pub use error::{CliError, Result};
pub use load::{load_csv, LoadedData};
pub use report::{emit, ExperimentReport, Format, Record};
pub use sweep::{run_sweep, sweep_dataset};
