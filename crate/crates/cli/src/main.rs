//! `qdamp`: identity suites and time series for the damped-oscillator
//! quantization.
//!
//! Exit status: 0 when everything ran (and, for `verify`, every check
//! passed); 1 when a `verify` check failed; 2 on usage or configuration
//! errors.

mod commands;
mod config;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommandKind, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qdamp_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qdamp",
    version,
    about = "Operator-identity suites and time series for the quantized damped oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration; every field is optional.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file (default: standard output).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format (default: json for verify, csv otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Dense dimension, overriding the per-check defaults.
    #[arg(long, global = true, value_name = "N")]
    dim: Option<usize>,

    /// Tolerance, overriding every per-check default.
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Run the full identity suite and write a report.
    Verify,
    /// Vacuum overlap and condensate numbers over the time grid.
    Evolve,
    /// Integrate the classical oscillator and compare with the closed form.
    Classical,
    /// Squeezing residuals and squeezed-vacuum amplitudes over a zeta grid.
    Squeeze,
}

impl Command {
    fn kind(self) -> CommandKind {
        match self {
            Command::Verify => CommandKind::Verify,
            Command::Evolve => CommandKind::Evolve,
            Command::Classical => CommandKind::Classical,
            Command::Squeeze => CommandKind::Squeeze,
        }
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(kind) = config.command {
        if kind != cli.command.kind() {
            return Err(CliError::Config(format!(
                "config is for {kind:?} but the command line asks for {:?}",
                cli.command.kind()
            )));
        }
    }
    if cli.out.is_some() {
        config.output_path = cli.out.clone();
    }
    if cli.format.is_some() {
        config.output_format = cli.format;
    }
    if cli.dim.is_some() {
        config.dim = cli.dim;
    }
    if cli.tol.is_some() {
        config.tolerance = cli.tol;
    }
    config.validate()?;
    Ok(config)
}

/// Rendered output and whether every check passed.
fn execute(command: Command, config: &RunConfig) -> Result<(String, bool), CliError> {
    let default_format = match command {
        Command::Verify => Format::Json,
        _ => Format::Csv,
    };
    let format = config.output_format.unwrap_or(default_format);
    match command {
        Command::Verify => {
            let report = commands::verify(config);
            Ok((output::render_report(&report, format)?, report.all_passed()))
        }
        Command::Evolve => Ok((commands::evolve(config).render(format)?, true)),
        Command::Classical => Ok((commands::classical(config)?.render(format)?, true)),
        Command::Squeeze => Ok((commands::squeeze(config)?.render(format)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(&cli).and_then(|config| {
        let (text, passed) = execute(cli.command, &config)?;
        match &config.output_path {
            Some(path) => fs::write(path, &text)
                .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
