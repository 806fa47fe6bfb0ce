//! File formats and command-line driver for `qembed-core`.

pub mod cli;
pub mod format;
pub mod render;
pub mod run;

pub use run::{run, Command, RunConfig, RunOutput};
