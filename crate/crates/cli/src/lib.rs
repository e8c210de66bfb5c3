//! Command-line front end for `hesse-core`: a cubic expression parser and
//! the subcommand implementations used by the `hesse` binary.

pub mod commands;
pub mod error;
pub mod parse;

pub use commands::Report;
pub use error::CliError;
pub use parse::parse_cubic;
