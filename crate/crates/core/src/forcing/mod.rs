//! Finite-condition forcing at desk scale: conditions are finite increasing
//! sequences, `ℙ′` keeps those whose blocks see color 0 cofinitely often,
//! and two constructions walk `ℙ′` in length-lex order.
//!
//! Order convention: `q <= p` (`q` is stronger) iff `q` end-extends `p`.

mod condition;
mod construct;
mod pprime;

use thiserror::Error;

use crate::expr::{EvalError, ParseError};
use crate::lexcore::LexError;

pub use condition::{extends, Condition, DenseSetSpec};
pub use construct::{
    one_gen_build, recheck, s1density_h, Disposition, DispositionKind, OneGen, S1Run, S1Step, FORCING_NODE_BUDGET,
};
pub use pprime::{in_pprime, pprime_failure};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0:?} is not strictly increasing")]
    NotIncreasing(Vec<u64>),
    #[error("condition reaches {last}, beyond horizon {horizon}")]
    BeyondHorizon { last: u64, horizon: u64 },
    #[error("expected a pair coloring, got arity {0}")]
    Arity(usize),
    #[error("start condition {0:?} is not in P'")]
    NotInPPrime(Vec<u64>),
    #[error("bad dense-set spec: {0}")]
    BadSpec(String),
}
