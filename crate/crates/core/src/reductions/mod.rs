//! Colorings built from other objects (injections, limit towers) and the
//! procedures that read answers back off embeddings and strategies.

mod hwrt;
mod injection;
mod limits;
pub mod seqcode;

use thiserror::Error;

use crate::game::GameError;
use crate::lexcore::LexError;

pub use hwrt::hwrt_normalize;
pub use injection::{
    aca_coloring, build_zero_embedding, range_coloring, range_decide, Injection, RangeDecision, ZeroEmbedding,
};
pub use limits::{
    extract_flim, gamelim_strategy, gamelim_verify, limgame_coloring, limit_reduce, tuple_coloring, Flim, FlimEntry,
    LimitSampler, LimitTower, Stability,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("expected arity {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("f is not injective: f({i}) = f({j}) = {value}")]
    NotInjective { i: u64, j: u64, value: u64 },
    #[error("stage for x = {x} needs probe bound {needed}, have {bound}")]
    NotStabilized { x: u64, needed: u64, bound: u64 },
    #[error("coloring carries no stability certificate")]
    MissingCertificate,
    #[error("stability fails at {args:?}: expected {expected}, found {got}")]
    CertificateViolation { args: Vec<u64>, expected: u64, got: u64 },
    #[error("strategy loses against {moves:?} (replies {replies:?})")]
    ModulusViolation { moves: Vec<u64>, replies: Vec<u64> },
    #[error("strategy opens with color {0}, expected 1")]
    WrongOpening(u64),
    #[error("sequence of length {len} does not have a 64-bit code")]
    CodeOverflow { len: usize },
    #[error("{0} is not a sequence code")]
    BadCode(u64),
    #[error("search space does not fit in memory")]
    TooLarge,
    #[error("precondition failed: {0}")]
    Premise(String),
}
