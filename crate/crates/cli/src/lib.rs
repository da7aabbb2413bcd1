//! Command-line front end: argument parsing, input documents, reports and
//! SVG figures. [`run`] is the whole program minus process I/O, so tests can
//! drive it in-process.

pub mod args;
mod commands;
pub mod input;
pub mod svg;

use std::ffi::OsString;
use std::path::Path;

use clap::Parser;
use coxkit::RankMode;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Module(#[from] coxkit::Error),
    #[error("golden mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Module(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

/// Everything one invocation produced. Numbers inside `result` are decimal
/// strings, indices 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub result: Value,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub svg: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
}

/// What a subcommand hands back before it is wrapped into a [`Report`].
pub(crate) struct Body {
    pub result: Value,
    pub summary: String,
    pub svg: Option<String>,
}

pub(crate) struct Ctx {
    pub mode: RankMode,
}

fn rank_mode(exact: bool, primes: Option<&str>) -> Result<RankMode, CliError> {
    if exact {
        return Ok(RankMode::Exact);
    }
    match primes {
        None => Ok(RankMode::Modular),
        Some(s) if s.trim().is_empty() => Ok(RankMode::Modular),
        Some(s) => Ok(RankMode::ModularWith(input::parse_u64_list(s)?)),
    }
}

/// The `result` of a golden file, which may be a full report or just the result.
fn golden_result(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    match v {
        Value::Object(ref m) if m.contains_key("command") && m.contains_key("result") => Ok(m["result"].clone()),
        other => Ok(other),
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    report: None,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    report: None,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let failed = |e: CliError| Outcome {
        code: e.exit_code(),
        report: None,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let mode = match rank_mode(cli.exact, std::env::var("COXKIT_PRIMES").ok().as_deref()) {
        Ok(m) => m,
        Err(e) => return failed(e),
    };
    let body = match commands::dispatch(&cli.command, &Ctx { mode }) {
        Ok(b) => b,
        Err(e) => return failed(e),
    };
    let report = Report {
        command,
        result: body.result,
        summary: body.summary,
        svg: body.svg,
    };
    let stdout = if cli.json {
        report.to_json()
    } else {
        let mut s = report.summary.clone();
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    };
    let mut out = Outcome {
        code: 0,
        report: None,
        stdout,
        stderr: String::new(),
    };
    if let Some(path) = &cli.expect {
        match golden_result(path) {
            Ok(g) if g == report.result => {}
            Ok(_) => {
                let e = CliError::Mismatch(format!("result differs from {}", path.display()));
                out.code = e.exit_code();
                out.stderr = format!("error: {e}\n");
            }
            Err(e) => {
                out.code = e.exit_code();
                out.stderr = format!("error: {e}\n");
            }
        }
    }
    out.report = Some(report);
    out
}
