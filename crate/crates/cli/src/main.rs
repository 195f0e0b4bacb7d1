//! `dunkl`: runs inequality verification, sharp-constant probes, damped wave simulations,
//! transform self-tests and corpus generation from JSON configs.
//!
//! Exit codes: 0 success, 1 inequality violation, 2 config/schema error, 3 numerical failure.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use dunkl::DunklError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "dunkl", version, about = "Numerical workbench for Dunkl operators and weighted inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config for the subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized corpora and probe restarts (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads.
    #[arg(long, global = true, env = "DUNKL_JOBS")]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evaluate an inequality over a seeded corpus.
    Verify,
    /// Search a trial family for the largest ratio.
    Sharp,
    /// Solve the damped Klein-Gordon equation, linear or with |u|^{p-1}u.
    Wave,
    /// Plancherel, k=0 Fourier and integration-by-parts checks.
    Selftest,
    /// Write a seeded corpus of test functions.
    Corpus,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sharp => "sharp",
            Command::Wave => "wave",
            Command::Selftest => "selftest",
            Command::Corpus => "corpus",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Numerical(String),
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Schema(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Numerical(m) | CliError::Violation(m) => m,
        }
    }
}

impl From<DunklError> for CliError {
    fn from(e: DunklError) -> Self {
        use DunklError::*;
        match e {
            InvalidInput(_) | UnsupportedFamily(_) | NegativeMultiplicity(_) | MultiplicityCount { .. } | OutOfRange(_)
            | MissingParameter(_) | ExtraParameter(_) | ClassMismatch(_) | Inadmissible(_) | Empty(_) => {
                CliError::Schema(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub struct RunArgs {
    pub command: Command,
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = RunArgs { command: cli.command, config: cli.config, seed: cli.seed, out: cli.out, jobs: cli.jobs };
    let code = commands::run(&args);
    ExitCode::from(code)
}
