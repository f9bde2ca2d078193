//! Sweep runner for `qcrit`: reads a TOML configuration, evaluates the task
//! over its parameter grid on a worker pool, and writes delimited data files
//! plus a run manifest.

pub mod config;
pub mod error;
pub mod grid;
pub mod run;
pub mod table;
pub mod tasks;

pub use config::{SweepConfig, TaskConfig, TaskKind};
pub use error::{CliError, Result};
pub use run::{run, validate, Manifest};
pub use table::Format;
