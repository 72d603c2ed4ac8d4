//! Command-line scenario runner for the two-mode traveling-field simulator.
//!
//! Verbs: `run` executes a scenario (one of the named cases or a custom
//! circuit from a config file, optionally sweeping the splitter angle),
//! `verify` executes the full cross-check suite, and `list-cases` prints the
//! available closed-form cases.
//!
//! Exit codes: 0 success, 1 configuration error, 2 verification failure,
//! 3 numerical error (cutoff).

mod config;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use beamsplit::{run_verification_suite, CaseId, DEFAULT_SEED};
use clap::{Parser, Subcommand};

use config::{OutputFormat, RunFlags, ScenarioConfig};

/// Application error with its process exit code.
#[derive(Debug)]
pub enum AppError {
    Config(String),
    Numerical(beamsplit::Error),
}

impl AppError {
    fn config(message: String) -> Self {
        AppError::Config(message)
    }

    fn exit_code(&self) -> u8 {
        match self {
            AppError::Config(_) => 1,
            AppError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Config(message) => write!(f, "configuration error: {message}"),
            AppError::Numerical(e) => write!(f, "numerical error: {e}"),
        }
    }
}

impl From<beamsplit::Error> for AppError {
    fn from(e: beamsplit::Error) -> Self {
        AppError::Numerical(e)
    }
}

#[derive(Parser)]
#[command(
    name = "beamsplit",
    about = "Two-mode traveling-field simulator: beam splitters, Mach-Zehnder pairs, photon detection",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run a scenario (a named case or a custom circuit)
    Run(RunFlags),
    /// Run the full verification suite
    Verify {
        /// Seed for the randomized checks
        #[arg(long)]
        seed: Option<u64>,
        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the closed-form cases
    ListCases,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), AppError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| AppError::config(format!("out: cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_command(command: Command) -> Result<u8, AppError> {
    match command {
        Command::Run(flags) => {
            let config = ScenarioConfig::resolve(&flags)?;
            let output = scenario::run_scenario(&config)?;
            let text = report::render_scenario(&output, config.format)?;
            emit(&text, config.out.as_ref())?;
            Ok(0)
        }
        Command::Verify { seed, format, out } => {
            let suite = run_verification_suite(seed.unwrap_or(DEFAULT_SEED));
            let text = report::render_verification(&suite, format)?;
            emit(&text, out.as_ref())?;
            Ok(if suite.all_passed() { 0 } else { 2 })
        }
        Command::ListCases => {
            let mut text = String::new();
            for case in CaseId::ALL {
                text.push_str(&format!("{:<8} {}\n", case.name(), case.description()));
            }
            emit(&text, None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run_command(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
