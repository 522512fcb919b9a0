//! `prandtl`: solve, transform diagnostics and self-verification.
//!
//! Exit codes: 0 ok, 2 configuration, 3 convergence, 4 verification, 5 I/O.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod error;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{parse_config, RunConfig};
use crate::error::CliError;
use crate::run::TestFunction;

#[derive(Parser)]
#[command(name = "prandtl", version, about = "Spectral solver for the Prandtl equation on (-1, 1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured problem and write CSV and report files.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides "output" in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transform a test function and compare against its closed form.
    Transform {
        #[arg(long, value_enum)]
        function: TestFunction,
        /// Only the grid section is used.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-verification suite.
    Verify {
        /// Fewer random samples and a coarser refinement pair.
        #[arg(long)]
        quick: bool,
    },
}

fn load(path: Option<&PathBuf>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => run::read_config(p),
        None => parse_config("{}"),
    }
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve { config, out } => run::solve(&load(Some(&config))?, out),
        Command::Transform { function, config, out } => run::transform(function, load(config.as_ref())?.grid, out),
        Command::Verify { quick } => run::verify(quick),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("prandtl: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
