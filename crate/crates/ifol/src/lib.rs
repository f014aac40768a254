//! Workspace files, reports and the command-line driver for [`ifol_core`].

pub mod load;
pub mod parse;
pub mod render;
pub mod report;

pub use load::{load_file, load_str, Document, LoadError, Query};
pub use report::{run_queries, Report, RunOptions};
