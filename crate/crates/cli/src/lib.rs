//! Command-line front end for `subshift-core`: substitution and point
//! literal formats, report serialization, the shipped report schema, and the
//! subcommand implementations behind the `subshift` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod point;
pub mod report;
pub mod schema;

pub use error::CliError;
