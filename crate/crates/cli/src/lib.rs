//! Command-line runner for the noncommutative oscillator library.
//!
//! Every command writes plot-ready CSV files plus one JSON run manifest that
//! records the parameters, derived constants, checks and the SHA-256 of each
//! data file it produced.

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod formats;
pub mod manifest;

pub use config::{RunConfig, Settings};
pub use error::{CliError, Result};
pub use manifest::{Check, RunManifest};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
