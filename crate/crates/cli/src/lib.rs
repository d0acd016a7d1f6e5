//! Command-line front end: argument definitions, subcommand handlers and
//! the table / CSV / JSON output document.

pub mod args;
pub mod commands;
pub mod output;

pub use args::{Cli, Command, Format};
pub use commands::{run, CliError};
pub use output::{parse_csv, parse_table, OutputDocument};
