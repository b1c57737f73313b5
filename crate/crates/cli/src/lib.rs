//! JSON documents, commands and SVG output for the `semitoric` tool.

pub mod command;
pub mod document;
pub mod json;
pub mod svg;

pub use command::{execute, run_command, CliError, Command, Flags, Payload, RunResult, Status};
pub use document::{load_path, load_str, Document, LoadError};
pub use svg::Window;
