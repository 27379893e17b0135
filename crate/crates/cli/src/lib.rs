//! Verification harness around `braidalg`: configuration, cached units of
//! work, and reports in JSON, CSV or table form.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use cache::Cache;
pub use commands::{HilbertTarget, Runner, Suite};
pub use config::{BackendKind, Format, RunConfig};
pub use error::CliError;
pub use report::{Check, Report};
