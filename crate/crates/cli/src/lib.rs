//! Command line and HTTP front end for `chaoskit`.
//!
//! [`run`] parses arguments and dispatches to [`commands`]; `serve` starts the
//! JSON API defined in [`service`].

use std::ffi::OsString;
use std::fmt;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod commands;
pub mod service;

pub use args::Cli;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for bad flags or data that fails validation.
pub const EXIT_VALIDATION: i32 = 1;
/// Exit status for unreadable inputs or unwritable outputs.
pub const EXIT_IO: i32 = 2;

/// A failed command, classified by exit status.
#[derive(Debug)]
pub enum CliError {
    Validation(anyhow::Error),
    Io(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn validation(msg: impl fmt::Display) -> CliError {
        CliError::Validation(anyhow::anyhow!("{msg}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(e) | CliError::Io(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<chaoskit::Error> for CliError {
    fn from(e: chaoskit::Error) -> Self {
        if e.is_io() {
            CliError::Io(e.into())
        } else {
            CliError::Validation(e.into())
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_VALIDATION,
            };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
