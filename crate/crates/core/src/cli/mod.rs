//! Command-line runner: a [`Scenario`] goes in, a certified [`Report`] comes
//! out. Exit codes are 0 when every certificate passes, 1 on a certificate
//! violation and 2 on bad input or usage.

mod args;
mod commands;
mod io;
mod report;
mod scenario;
mod suite;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command, Flags};
pub use io::{read_algebra, AlgebraFile};
pub use report::{CertificateRecord, Report};
pub use scenario::{GammaSource, Kind, Scenario};
pub use suite::{suite_scenarios, THREADS_ENV};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Library(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(crate::Error::CertificateViolation { .. }) => 1,
            _ => 2,
        }
    }
}

/// Runs one scenario. The report's wall-clock is the only field outside the digest.
pub fn run(scenario: &Scenario) -> Result<Report, CliError> {
    let start = Instant::now();
    let id = scenario.id.clone().unwrap_or_else(|| scenario.kind.to_string());
    let (summary, certificates) = match scenario.kind {
        Kind::Suite => return suite::run_suite(scenario, start),
        _ => commands::dispatch(scenario)?,
    };
    Ok(Report::new(id, scenario.clone(), summary, &certificates, start.elapsed()))
}

/// Parses `args`, runs the scenario, writes the report, and maps the outcome
/// to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(report) => {
            for name in &report.failures {
                eprintln!("certificate violation: {name}");
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Builds the scenario from `cli`, runs it and writes the outputs it names.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let (kind, flags) = cli.command.parts();
    let scenario = Scenario::from_flags(kind, flags)?;
    let report = run(&scenario)?;
    io::write_output(flags.out.as_deref(), &report.to_json())?;
    if let Some(path) = &flags.csv {
        io::write_csv(path, &report.certificates)?;
    }
    Ok(report)
}
