//! Command-line front end for `emergelab`. The binary is a thin wrapper
//! around [`run`], which tests drive in-process.

pub mod args;
mod commands;
pub mod pbm;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command};
pub use pbm::{render_pbm, EmptyImage};
pub use report::Report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment the CLI depends on, passed in explicitly.
#[derive(Debug, Clone, Default)]
pub struct Env {
    /// Raw value of `EMERGELAB_BUDGET`.
    pub budget: Option<String>,
}

impl Env {
    pub fn from_process() -> Self {
        Self {
            budget: std::env::var("EMERGELAB_BUDGET").ok(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// `op` names the operation and its input.
    #[error("{op}: {message}")]
    Domain { op: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Parses `argv`, runs the command and returns the exit code. Reports go
/// to `stdout`, errors to `stderr` as a single line.
pub fn run<I, T>(argv: I, env: &Env, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    match run_command(&cli.command, env) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "error: writing output: {e}");
                EXIT_DOMAIN
            }
        },
        Err(e) => {
            let prefix = if matches!(e, CliError::Usage(_)) {
                "usage error"
            } else {
                "error"
            };
            let _ = writeln!(stderr, "{prefix}: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command, writing any declared output files, and returns the
/// text for stdout.
pub fn run_command(cmd: &Command, env: &Env) -> Result<String, CliError> {
    commands::dispatch(cmd, env)
}
