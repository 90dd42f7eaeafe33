//! The game `G_n(c)`: ⊕ names a color `d`, then for `i = 1..n` ⊖ plays `a_i`
//! and ⊕ answers `b_i >= a_i`; ⊕ wins iff `c(b_1..b_n) = d`.

mod convert;
mod play;
mod solve;
mod strategy;

use thiserror::Error;

use crate::lexcore::LexError;

pub use convert::{embedding_to_strategy, strategy_to_embedding, Unfolding};
pub use play::{defeat_minus, play, play_line, DefeatRecord, GameState, PlayRecord, Player, Round, Turn};
pub use solve::search_plus_strategy;
pub use strategy::{MinusStrategy, PlusStrategy, BoxedRule, ReplyFn, ReplyMap};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("strategy undefined at prefix {prefix:?}")]
    Undefined { prefix: Vec<u64> },
    #[error("illegal reply {reply} to prefix {prefix:?}")]
    IllegalReply { prefix: Vec<u64>, reply: u64 },
    #[error("prefix {prefix:?} does not fit a game with {arity} rounds")]
    BadPrefix { prefix: Vec<u64>, arity: usize },
    #[error("move made out of turn")]
    OutOfTurn,
    #[error("color {d} is not below {colors}")]
    ColorOutOfRange { d: u64, colors: u64 },
    #[error("expected {expected} rounds, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("move bound must be positive")]
    ZeroBound,
    #[error("embedding is not strong")]
    NotStrong,
    #[error("game tree does not fit in memory")]
    TooLarge,
    #[error("precondition failed: {0}")]
    Premise(String),
}
