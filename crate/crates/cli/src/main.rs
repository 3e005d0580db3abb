//! `spinor-grass`: compute coordinates, generate seeded instances, run identity sweeps.
//!
//! Exit codes: 0 verified / computed, 1 counterexample found, 2 usage or input error.

mod compute;
mod error;
mod generate;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "spinor-grass", version, about = "Exact Plücker/Cartan coordinates and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a Pfaffian, coordinate map or Δ value.
    Compute(compute::ComputeArgs),
    /// Emit a reproducible random matrix or frame.
    Generate(generate::GenerateArgs),
    /// Run identity sweeps over seeded instances.
    Verify(verify::VerifyArgs),
}

/// Outcome of a command that did not fail on input.
pub enum Outcome {
    Ok,
    Counterexample,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Compute(args) => compute::run(args),
        Command::Generate(args) => generate::run(args),
        Command::Verify(args) => verify::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
