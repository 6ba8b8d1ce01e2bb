//! The `mfill` command line: argument grammar, input fixtures, reports and
//! the verification suite.

pub mod args;
pub mod fixtures;
pub mod report;
pub mod run;
pub mod svg;
pub mod verify;

pub use args::Cli;
pub use report::Report;
pub use run::run;
