//! Command-line orchestration: run configuration, suite execution, JSON
//! reports and CSV artifacts.

mod args;
mod config;
mod report;
mod suites;

pub use crate::zf::parse_word;
pub use args::{run, Cli, Command};
pub use config::{
    BootstrapConfig, CausalityConfig, CrossingConfig, DpiConfig, EntropyConfig, KkConfig, KmsConfig, KmsVariant,
    RunConfig, Suite, UnitarizeConfig, ZfConfig, DEFAULT_SEED,
};
pub use report::{Artifact, Check, ErrorKind, Report, SuiteError, SuiteReport, EXACT};
pub use suites::{run_suite, worker_threads, THREADS_ENV};
