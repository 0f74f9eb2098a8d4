//! Command-line front end for the heavy-tailed toolkit: sampling, stable
//! densities, trajectory simulation, diffusion measurement, tail fitting,
//! and the search experiments, each as one batch subcommand.
//!
//! Library form exists for the integration tests; the binary is a thin
//! wrapper around [`run`].

pub mod args;
pub mod commands;
pub mod format;
pub mod runspec;

use clap::Parser;

pub fn run() -> anyhow::Result<()> {
    commands::dispatch(args::Cli::parse())
}
