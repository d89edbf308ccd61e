//! File formats and subcommands behind the `oligosim` binary.

pub mod commands;
pub mod config;
pub mod report;
pub mod svg;

pub use commands::{calibrate_command, render_run, run_command, sweep_command, OutputBundle};
