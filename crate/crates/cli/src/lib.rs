//! File formats, configuration and parallel drivers behind the `uplift`
//! command-line tool.

pub mod commands;
pub mod config;
pub mod dataset;
pub mod error;
pub mod manifest;
pub mod output;
pub mod parallel;

pub use error::CliError;
