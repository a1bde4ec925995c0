//! Command-line front end: bound sweeps as CSV or JSON, lattice and Monte
//! Carlo runs, and the verification suites.

pub mod commands;
pub mod error;
pub mod parse;
pub mod report;
pub mod verify;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
