//! The `ideascope` pipeline: configuration, cached stages and the run
//! manifest behind the command-line tool.

pub mod cli;
pub mod config;
pub mod error;
pub mod manifest;
pub mod stages;

pub use cli::{run, Cli};
pub use config::PipelineConfig;
pub use error::CliError;
