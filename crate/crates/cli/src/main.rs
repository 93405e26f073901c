//! `tsense`: Fisher-information scans, optimal probes and scaling tables for
//! trilinear bosonic couplings.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommandName, ConfigFile, Flags, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<tsense_core::Error> for CliError {
    fn from(e: tsense_core::Error) -> Self {
        match e {
            tsense_core::Error::Config(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tsense", version, about = "Sensitivity analysis for trilinear bosonic couplings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fisher information and Cramér–Rao bound over a coupling grid.
    FisherScan(Flags),
    /// Best Fock configuration for a fixed number of quanta.
    Optimize(Flags),
    /// Optimal zero-coupling Fisher information against total quanta.
    Scaling(Flags),
    /// First local minimum of the Fisher information for each state.
    DynamicRange(Flags),
    /// Pure and noisy profiles side by side.
    NoiseScan(Flags),
    /// Fock probe against a coherent probe with matched mean occupations.
    CoherentCompare(Flags),
}

impl Command {
    fn split(self) -> (CommandName, Flags) {
        match self {
            Command::FisherScan(f) => (CommandName::FisherScan, f),
            Command::Optimize(f) => (CommandName::Optimize, f),
            Command::Scaling(f) => (CommandName::Scaling, f),
            Command::DynamicRange(f) => (CommandName::DynamicRange, f),
            Command::NoiseScan(f) => (CommandName::NoiseScan, f),
            Command::CoherentCompare(f) => (CommandName::CoherentCompare, f),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    match std::env::var("TSENSE_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("TSENSE_THREADS must be a thread count, got {v:?}")))?;
            tsense_core::configure_threads(n);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let (name, flags) = cli.command.split();
    let file = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
            ConfigFile::parse(&text)?
        }
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(name, flags, file)?;
    let text = commands::run(&cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tsense: error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
