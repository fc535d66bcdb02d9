//! Command-line front end of `wlab-core`: JSON reports, OBJ meshes and CSV
//! spectra.
//!
//! Exit codes: 0 success, 1 some check failed, 2 usage error, 3 numerical
//! or I/O failure.

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod mesh;
pub mod report;
pub mod spectrum_csv;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(wlab_core::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(e) => write!(f, "numerical error: {e}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<wlab_core::Error> for CliError {
    /// Bad names, parameters and sizes are the caller's fault; everything
    /// else is a numerical breakdown.
    fn from(e: wlab_core::Error) -> Self {
        use wlab_core::Error as E;
        match e {
            E::UnknownSurface(_)
            | E::UnknownParam { .. }
            | E::ParamRange { .. }
            | E::WeightMismatch(..)
            | E::Truncation { .. } => CliError::Usage(e.to_string()),
            e => CliError::Numerical(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Parse `argv` (program name first), run the subcommand and return the
/// process exit code. Diagnostics go to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match commands::execute(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("wlab: {e}");
            e.exit_code()
        }
    }
}
