//! Configuration, sweeps, fit reports and figure recipes behind the
//! `starcov` command.

pub mod config;
pub mod error;
pub mod fit;
pub mod recipes;
pub mod sweep;

pub use config::{load_config, Config, SeriesRun, SweepSpec, SweepVar};
pub use error::CliError;
pub use fit::fit_report;
pub use recipes::{reproduce, Overrides, FIGURES};
pub use sweep::{evaluate_point, run_series, run_sweep, BatchCache, Row, CSV_HEADER};
