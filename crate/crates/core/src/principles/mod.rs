//! Checkers and witness searches for the indecomposability principles and
//! the Ramsey-type principles for pairs, relative to explicit bounds.

mod ads;
mod elem;
mod iso;
mod lex_search;
mod ramsey;
mod verdict;

use thiserror::Error;

use crate::lexcore::LexError;
use crate::reductions::ReductionError;

pub use ads::{is_homogeneous, sads_extract, to_linear_order, transitive_check, transitive_violation, LinearOrder};
pub use elem::{elem_frontier_sweep, elem_indec_check, ElemReport, ElemWitness};
pub use iso::iso_prefix;
pub use lex_search::lex_indec_search;
pub use ramsey::{hwrt_check, hwrt_search, row_hits, rt_search, wrt_check, wrt_search, HWRT_NODE_BUDGET};
pub use verdict::{Outcome, Principle, PrincipleVerdict, SearchBox};

/// The game principle is decided by the game solver.
pub use crate::game::search_plus_strategy as game_indec_search;

/// Largest number of colors the per-color tables accept.
pub const MAX_COLORS: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PrincipleError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("grid extent must be positive")]
    ZeroGrid,
    #[error("search space does not fit in memory")]
    TooLarge,
    #[error("{0} colors is more than this search supports")]
    TooManyColors(u64),
    #[error("expected a coloring of arity {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("color {d} is not below {colors}")]
    ColorOutOfRange { d: u64, colors: u64 },
    #[error("block function {0:?} is not strictly increasing")]
    NotIncreasing(Vec<u64>),
    #[error("coloring is not transitive at ({x},{y},{z})")]
    NotTransitive { x: u64, y: u64, z: u64 },
    #[error("stability certificate fails at {args:?}: expected {expected}, found {got}")]
    CertificateViolation { args: Vec<u64>, expected: u64, got: u64 },
    #[error("precondition failed: {0}")]
    Premise(String),
}
