//! Command-line front end for `mirrorloc`: scenario configs, observation
//! files, CSV and plot-data output.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod observations;

pub use config::ScenarioConfig;
pub use error::{exit, CliError};
