//! Desk-scale combinatorics of ω^n: finite colorings of ℕ^n, the
//! indecomposability principles, the game G_n(c), the coloring reductions
//! behind them and a finite-condition forcing simulator.
//!
//! Everything infinite is finitized explicitly: grids `[0, M)^n` stand in for
//! ℕ^n and a [`LargenessPolicy`] decides when a finite set counts as infinite
//! or cofinite.

pub mod expr;
pub mod forcing;
pub mod game;
pub mod lexcore;
pub mod principles;
pub mod reductions;

pub use expr::{parse_expr, parse_predicate, Expr};
pub use lexcore::{
    check_embedding, check_growth, compose, lex_cmp, Coloring, Grid, LargenessPolicy, LexEmbedding, LexError, NatMap,
    StabilityCertificate, Tuple,
};
