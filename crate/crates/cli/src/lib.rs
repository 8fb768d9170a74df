//! The `ternary` command line: JSON structure files and the subcommands
//! that read and write them.

pub mod commands;
pub mod format;

pub use commands::{run, EXIT_DISAGREE, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
pub use format::{read, write, Document, FormatError, Structure};
