//! Tuples, the lexicographic order, colorings, grid embeddings and the
//! growth checks for lexicographic embeddings.

mod coloring;
mod embedding;
mod policy;
mod tuple;

use thiserror::Error;

use crate::expr::{EvalError, ParseError};

pub use coloring::{Coloring, MapBody, NatMap, NativeFn, StabilityCertificate, Table};
pub use embedding::{
    check_embedding, check_growth, compose, EmbeddingReport, GrowthFailure, GrowthItem, GrowthReport, LexEmbedding,
    PointPair,
};
pub use policy::LargenessPolicy;
pub use tuple::{lex_cmp, lex_cmp_slices, next_point, Grid, Tuple};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("a coloring needs at least one color")]
    ZeroColors,
    #[error("point {point:?} lies outside the table horizon {horizon}")]
    OutOfHorizon { point: Vec<u64>, horizon: u64 },
    #[error("policy needs horizon {needed} but the table only covers {have}")]
    HorizonTooSmall { needed: u64, have: u64 },
    #[error("value {value} is not a color below {colors}")]
    ColorOutOfRange { value: u64, colors: u64 },
    #[error("table has {got} entries, expected {expected}")]
    BadTableLength { expected: usize, got: usize },
    #[error("table does not fit in memory")]
    TableTooLarge,
    #[error("arithmetic overflow in {0}")]
    Overflow(String),
    #[error("invalid policy: {0}")]
    Policy(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
