//! The `indec` command line: documents, argument parsing and dispatch.

pub mod args;
mod check;
pub mod docs;
mod force;
mod game;
mod reduce;
pub mod report;

use std::io::{BufRead, Write};
use std::path::Path;

use indec_core::expr::ParseError;
use indec_core::forcing::ForcingError;
use indec_core::game::GameError;
use indec_core::principles::PrincipleError;
use indec_core::reductions::ReductionError;
use indec_core::LexError;
use thiserror::Error;

pub use args::{Cli, Command};
pub use report::{exit_code, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("terminal: {0}")]
    Terminal(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Document(String),
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Principle(#[from] PrincipleError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Forcing(#[from] ForcingError),
    #[error("input ended before the play finished")]
    Eof,
}

/// Exit code for errors; verdicts use 0, 1 and 2.
pub const EXIT_ERROR: i32 = 3;

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Run one command. `argv` is echoed into the report; `input` feeds
/// interactive play. Returns the exit code.
pub fn run(cli: Cli, argv: Vec<String>, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = std::time::Instant::now();
    let mut report = match cli.command {
        Command::Check(a) => check::run(&a)?,
        Command::Game(g) => match game::run(g, input, out)? {
            Some(r) => r,
            None => return Ok(0),
        },
        Command::Reduce(r) => match reduce::run(r, out)? {
            Some(r) => r,
            None => return Ok(0),
        },
        Command::Force(a) => force::run(&a)?,
        Command::Fmt(a) => {
            let doc = docs::Document::parse(&read_file(&a.input)?)?.normalize()?;
            let text = doc.to_json()?;
            match &a.out {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            return Ok(0);
        }
    };
    report.command = argv;
    report.timing_ms = start.elapsed().as_millis() as u64;
    let code = exit_code(&report.outcome);
    out.write_all(report.to_json()?.as_bytes())?;
    Ok(code)
}
