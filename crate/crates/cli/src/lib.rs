//! Command-line front end: file formats, JSON reports and subcommands.
//!
//! Vertex and witness indices are 1-based in every file and every line of
//! output; the core library is 0-based and the conversion happens here.

pub mod app;
pub mod error;
pub mod format;
pub mod report;

pub use app::{run, Cli};
pub use error::CliError;
