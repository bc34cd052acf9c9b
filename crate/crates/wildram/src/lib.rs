//! JSON job runner, reports and acceptance grid for `wildram-core`.

pub mod checks;
pub mod codec;
pub mod config;
pub mod error;
pub mod report;
pub mod selftest;
pub mod tasks;

pub use config::JobConfig;
pub use error::CliError;
