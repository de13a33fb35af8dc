//! Command-line surface and sweep harness for `brig-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod oracle;
pub mod report;
pub mod sweep;

pub use config::{Format, GridSpec, IntRange, SweepConfig, THREADS_ENV};
pub use error::{CliError, Exit};
pub use oracle::brute_force_zero_oracle;
pub use report::{Discrepancy, Record, Report, Summary};
pub use sweep::{run_sweep, write_report};
