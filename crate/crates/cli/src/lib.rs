//! Config-driven experiment harness over `qqm-core`.
//!
//! `run` executes one experiment and writes a JSON report; `suite::run_all`
//! runs a list of them with per-entry seeds derived from the suite seed.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod config;
pub mod error;
pub mod experiments;
pub mod reference;
pub mod report;
mod run;
pub mod suite;

pub use config::{ExperimentConfig, ExperimentKind, ResolvedConfig, SuiteConfig};
pub use error::{CliError, CliResult};
pub use report::{Record, Report, Summary};
pub use run::{output_dir, run};
pub use suite::run_all;
