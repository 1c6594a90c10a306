//! `fosc` — confined-oscillator spectra and nonlinear-coherent-state
//! statistics from the command line.
//!
//! Exit codes: 0 success, 2 domain error, 3 solver non-convergence.

mod commands;
mod config;
mod output;
mod sweep;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

use commands::{eval::EvalOp, identity::IdentityArgs, mandel::MandelArgs, squeeze::SqueezeArgs, table::TableArgs};
use config::{GlobalOpts, Settings};

#[derive(Debug)]
pub enum CliError {
    Core(fosc_core::Error),
    Msg(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Msg(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(fosc_core::Error::NonConvergence(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fosc",
    version,
    about = "Spectra and nonlinear-coherent-state statistics of a harmonic oscillator confined in an infinite well",
    after_help = "Energies are in units of hbar*omega, half-widths in units of the scale \
                  length 1/(m*omega), and all angles on the command line are degrees."
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy table: closed-form model spectrum vs both numerical solvers.
    Table(TableArgs),
    /// Mandel parameter sweep over the well width.
    Mandel(MandelArgs),
    /// Quadrature squeezing sweeps (phase, width, or deformed).
    Squeeze(SqueezeArgs),
    /// Diagonal moments of the completeness measure.
    Identity(IdentityArgs),
    /// One-shot evaluation of a single operation.
    Eval {
        #[command(subcommand)]
        op: EvalOp,
    },
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let settings = Settings::resolve(&cli.globals)?;
    match &cli.command {
        Command::Table(args) => commands::table::run(args, &settings, &cli.globals),
        Command::Mandel(args) => commands::mandel::run(args, &settings, &cli.globals),
        Command::Squeeze(args) => commands::squeeze::run(args, &settings, &cli.globals),
        Command::Identity(args) => commands::identity::run(args, &settings, &cli.globals),
        Command::Eval { op } => commands::eval::run(op, &settings, &cli.globals),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
