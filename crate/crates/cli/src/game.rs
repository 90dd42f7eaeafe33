use std::io::{BufRead, Write};
use std::path::Path;

use indec_core::game::{
    embedding_to_strategy, search_plus_strategy, strategy_to_embedding, GameState, Player, PlusStrategy,
};
use serde::Serialize;

use crate::args::{ConvertArgs, GameCommand, PlayArgs, SolveArgs};
use crate::check::load_coloring;
use crate::docs::{Document, EmbeddingDocument, StrategyDocument};
use crate::report::{RunReport, Status};
use crate::{read_file, write_file, CliError};

/// Write `doc` to `path`, or to `out` when no path is given.
pub(crate) fn emit(doc: Document, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = doc.to_json()?;
    match path {
        Some(p) => write_file(p, &text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub(crate) fn load_strategy(path: &Path) -> Result<PlusStrategy, CliError> {
    let doc: StrategyDocument = serde_json::from_str(&read_file(path)?)?;
    doc.to_strategy()
}

pub(crate) fn run(cmd: GameCommand, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<Option<RunReport>, CliError> {
    match cmd {
        GameCommand::Play(a) => play(&a, input, out).map(|_| None),
        GameCommand::Solve(a) => solve(&a, out),
        GameCommand::Convert(a) => convert(&a, out),
    }
}

fn play(a: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let c = load_coloring(&a.coloring)?;
    let sigma = match &a.strategy {
        Some(p) => load_strategy(p)?,
        None => {
            let v = search_plus_strategy(&c, a.v, a.a)?;
            v.witness
                .ok_or_else(|| CliError::Usage(format!("no winning strategy within V={} A={}", a.v, a.a)))?
        }
    };
    if sigma.arity() != c.arity() {
        return Err(CliError::Usage(format!(
            "strategy has arity {}, coloring has arity {}",
            sigma.arity(),
            c.arity()
        )));
    }
    let mut st = GameState::new(c.arity(), c.colors());
    st.open(sigma.opening())?;
    writeln!(out, "plus opens with color {}", sigma.opening())?;
    for i in 1..=c.arity() {
        let (a_i, b_i) = loop {
            write!(out, "a_{i}? ")?;
            out.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                writeln!(out)?;
                return Err(CliError::Eof);
            }
            let Ok(a_i) = line.trim().parse::<u64>() else {
                writeln!(out, "illegal move: expected a natural number")?;
                continue;
            };
            let mut prefix = st.a_prefix();
            prefix.push(a_i);
            match sigma.raw_reply(&prefix) {
                Some(b) if b >= a_i => break (a_i, b),
                Some(b) => {
                    return Err(CliError::Usage(format!("strategy replies {b} below {a_i} at {prefix:?}")));
                }
                None => writeln!(out, "illegal move: the strategy has no reply to {prefix:?}")?,
            }
        };
        st.minus_move(a_i)?;
        st.plus_reply(b_i)?;
        writeln!(out, "b_{i} = {b_i}")?;
    }
    let (winner, value) = st.result(&c)?;
    let who = match winner {
        Player::Plus => "plus",
        Player::Minus => "minus",
    };
    writeln!(out, "WINNER: {who} COLOR: {} VALUE: {value}", sigma.opening())?;
    Ok(())
}

#[derive(Serialize)]
struct SolveResult {
    principle: &'static str,
    color: Option<u64>,
    v: u64,
    a: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    written: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn solve(a: &SolveArgs, out: &mut dyn Write) -> Result<Option<RunReport>, CliError> {
    let c = load_coloring(&a.coloring)?;
    let v = search_plus_strategy(&c, a.v, a.a)?;
    let status = Status::from(&v.outcome);
    if let Some(sigma) = &v.witness {
        let doc = Document::Strategy(StrategyDocument::from_strategy(sigma)?);
        emit(doc, a.out.as_deref(), out)?;
        if a.out.is_none() {
            return Ok(None);
        }
    }
    let result = SolveResult {
        principle: "game",
        color: v.color,
        v: a.v,
        a: a.a,
        written: a.out.as_ref().filter(|_| v.witness.is_some()).map(|p| p.display().to_string()),
        note: v.note.clone(),
    };
    RunReport::new(status, result, None).map(Some)
}

fn convert(a: &ConvertArgs, out: &mut dyn Write) -> Result<Option<RunReport>, CliError> {
    let doc = if let Some(path) = &a.strategy {
        let sigma = load_strategy(path)?;
        let grid = match a.grid {
            Some(m) => m,
            None => {
                let doc: StrategyDocument = serde_json::from_str(&read_file(path)?)?;
                doc.replies.iter().flat_map(|r| r.prefix.iter()).max().map_or(1, |m| m + 1)
            }
        };
        let u = strategy_to_embedding(&sigma, grid)?;
        Document::Embedding(EmbeddingDocument::from_embedding(&u.embedding))
    } else {
        let path = a.embedding.as_ref().expect("clap requires one source");
        let d = a
            .d
            .ok_or_else(|| CliError::Usage("--d is required when converting an embedding".into()))?;
        let edoc: EmbeddingDocument = serde_json::from_str(&read_file(path)?)?;
        let sigma = embedding_to_strategy(&edoc.to_embedding()?, d)?;
        Document::Strategy(StrategyDocument::from_strategy(&sigma)?)
    };
    emit(doc, a.out.as_deref(), out)?;
    Ok(None)
}
