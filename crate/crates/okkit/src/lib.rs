//! File formats, plots, batch drivers and the command-line front end for
//! `okkit-core`.
//!
//! Every command reads a catalog name or an entry file, writes its artifacts
//! into an output directory and is deterministic for a fixed seed. Sample
//! batches run on a thread pool capped by `OKKIT_THREADS`.

pub mod batch;
pub mod checks;
pub mod commands;
pub mod config;
pub mod diagnostics;
mod error;
mod input;
pub mod json;
pub mod svg;

pub use error::{is_validation, CliError, CliResult};
pub use input::load_input;
