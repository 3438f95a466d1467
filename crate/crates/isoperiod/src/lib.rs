//! Command-line front end for `isoperiod-core`: JSON in, JSON (or a plain
//! table) out.

pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::fmt;

pub use commands::Cli;

/// Exit status plus the bytes destined for stdout and stderr.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum Failure {
    /// Exit 1, reported with the library's error tag.
    Domain(isoperiod_core::Error),
    /// Exit 2: unreadable input, malformed JSON or schema violations.
    Malformed(String),
}

impl From<isoperiod_core::Error> for Failure {
    fn from(e: isoperiod_core::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Malformed(format!("malformed JSON: {e}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "error: {}: {e}", e.tag()),
            Failure::Malformed(m) => write!(f, "error: {m}"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match commands::execute(&cli) {
        Ok(v) => Outcome { code: 0, stdout: commands::render(&v, cli.format), stderr: String::new() },
        Err(f) => {
            let code = match f {
                Failure::Domain(_) => 1,
                Failure::Malformed(_) => 2,
            };
            Outcome { code, stdout: String::new(), stderr: format!("{f}\n") }
        }
    }
}
