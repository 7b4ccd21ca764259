//! `smilansky` command-line driver: Jacobi counts, Pollaczek oracles,
//! discretized operator counts, asymptotic law tables and cross-checks.

mod args;
mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::Format;
use commands::{asymptotics, jacobi, pollaczek, smilansky as operator, verify};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "smilansky",
    version,
    about = "Spectral counting for Jacobi matrices and the Smilansky operator"
)]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Zero-diagonal Jacobi matrices.
    #[command(subcommand)]
    Jacobi(jacobi::Command),
    /// Pollaczek closed forms.
    #[command(subcommand)]
    Pollaczek(pollaczek::Command),
    /// Discretized operator counts.
    #[command(subcommand)]
    Smilansky(operator::Command),
    /// Band-edge asymptotic laws.
    #[command(subcommand)]
    Asymptotics(asymptotics::Command),
    /// End-to-end cross-checks with a pass/fail table.
    #[command(subcommand)]
    Verify(verify::Command),
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    let report = match &cli.group {
        Group::Jacobi(c) => jacobi::run(c, &ctx)?,
        Group::Pollaczek(c) => pollaczek::run(c, &ctx)?,
        Group::Smilansky(c) => operator::run(c, &ctx)?,
        Group::Asymptotics(c) => asymptotics::run(c, &ctx)?,
        Group::Verify(c) => verify::run(c, &ctx)?,
    };
    report.write(cli.format, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
