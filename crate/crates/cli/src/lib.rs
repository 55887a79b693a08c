//! Command-line front end for `qvlbi-core`.
//!
//! [`run`] is the whole program: it takes the raw argument vector, writes the
//! artifact to the given sink (or to `--out`) and returns the process exit code.

mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::FromArgMatches;

use args::{Cli, Format};

pub use args::VERSION;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qvlbi_core::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_TOLERANCE: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_USAGE,
            _ => EXIT_VALIDATION,
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
/// Diagnostics go to standard error.
pub fn run<W: Write>(argv: Vec<OsString>, stdout: &mut W) -> u8 {
    let argv = match config::merge(argv) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let parsed = args::command().try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return EXIT_USAGE;
        }
        Err(e) => {
            return match write!(stdout, "{}", e.render()) {
                Ok(()) => 0,
                Err(_) => EXIT_VALIDATION,
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute<W: Write>(cli: &Cli, stdout: &mut W) -> Result<u8, CliError> {
    let outcome = commands::run(cli)?;
    let format = cli.format.or(outcome.preferred).unwrap_or(Format::Json);
    let text = outcome.artifact.render(format)?;
    match cli.out.as_deref() {
        Some(path) => std::fs::write(path, text)?,
        None => {
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    if outcome.tolerance_failed {
        eprintln!("error: one or more results fall outside their stored tolerance");
        return Ok(EXIT_TOLERANCE);
    }
    Ok(0)
}
