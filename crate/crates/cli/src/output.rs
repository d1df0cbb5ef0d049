//! Rendering, output files and the mapping of failures to exit codes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use spincurve::error::{BruhatError, CurveError, GroupError, MonodromyError, StrataError, WeylError};
use spincurve::Error;

use crate::Format;

/// A failure, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// A verification ran and found violations (exit 1); the report is
    /// still written.
    Failed(String),
    /// Invalid input (exit 2).
    Validation(String),
    /// The computation could not decide (exit 3).
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Failed(msg) | CliError::Validation(msg) | CliError::Numerical(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

macro_rules! via_core_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::from(Error::from(e))
            }
        })*
    };
}

via_core_error!(GroupError, WeylError, BruhatError, CurveError, StrataError, MonodromyError);

/// The rendered result of a subcommand and, for verifications, the
/// failures found.
pub struct Report {
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Report { text, failure: None }
    }
}

pub fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Renders rows as CSV with the given header.
pub fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| validation(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| validation(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| validation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| validation(e.to_string()))
}

/// Fails with a validation error for subcommands without tabular output.
pub fn json_only(format: Format, command: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(validation(format!("{command} has no CSV output; use --format json"))),
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| validation(format!("cannot write to stdout: {e}")))
        }
    }
}
