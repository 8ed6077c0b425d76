//! Command line front end for idxlab: descriptor parsing, report rendering,
//! one entry point per subcommand and the built-in verification suite.

pub mod commands;
pub mod config;
pub mod descriptor;
pub mod report;
pub mod suite;
pub mod views;

pub use commands::CliError;
pub use config::{OutputMode, RunConfig};
pub use report::Report;
pub use suite::{run_suite, run_suite_with, Check, Corpus, Status, SuiteReport};
