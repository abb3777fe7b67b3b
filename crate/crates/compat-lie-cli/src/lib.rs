//! File formats, output rendering, and the threaded job runner backing the
//! `compat-lie` command-line tool.

pub mod json;
pub mod output;
pub mod runner;
