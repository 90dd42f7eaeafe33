use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::lexcore::{next_point, Grid};

use super::GameError;

pub type ReplyFn = Arc<dyn Fn(&[u64]) -> Option<u64> + Send + Sync>;

/// A boxed reply rule, as handed to [`MinusStrategy::from_rules`].
pub type BoxedRule = Box<dyn Fn(&[u64]) -> Option<u64> + Send + Sync>;

#[derive(Clone)]
pub enum ReplyMap {
    /// Explicit replies keyed by move prefix.
    Table(BTreeMap<Vec<u64>, u64>),
    /// A rule; `None` marks an undefined prefix.
    Rule { name: String, f: ReplyFn },
}

impl fmt::Debug for ReplyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplyMap::Table(t) => f.debug_tuple("Table").field(t).finish(),
            ReplyMap::Rule { name, .. } => write!(f, "Rule({name})"),
        }
    }
}

impl ReplyMap {
    fn get(&self, prefix: &[u64]) -> Option<u64> {
        match self {
            ReplyMap::Table(t) => t.get(prefix).copied(),
            ReplyMap::Rule { f, .. } => f(prefix),
        }
    }
}

/// Player ⊕'s plan in `G_n(c)`: an opening color and a reply `σ(a_1..a_i)`
/// for each ⊖-prefix, `1 <= i <= n`.
#[derive(Clone, Debug)]
pub struct PlusStrategy {
    arity: usize,
    d: u64,
    replies: ReplyMap,
}

impl PlusStrategy {
    /// A tabled strategy; every entry must be legal (`σ(a) >= a_i`).
    pub fn from_table(arity: usize, d: u64, table: BTreeMap<Vec<u64>, u64>) -> Result<PlusStrategy, GameError> {
        for (prefix, &b) in &table {
            if prefix.is_empty() || prefix.len() > arity {
                return Err(GameError::BadPrefix {
                    prefix: prefix.clone(),
                    arity,
                });
            }
            if b < *prefix.last().unwrap() {
                return Err(GameError::IllegalReply {
                    prefix: prefix.clone(),
                    reply: b,
                });
            }
        }
        Ok(PlusStrategy {
            arity,
            d,
            replies: ReplyMap::Table(table),
        })
    }

    /// A rule-based strategy. Legality is checked at reply time.
    pub fn from_rule(
        arity: usize,
        d: u64,
        name: impl Into<String>,
        f: impl Fn(&[u64]) -> Option<u64> + Send + Sync + 'static,
    ) -> PlusStrategy {
        PlusStrategy {
            arity,
            d,
            replies: ReplyMap::Rule {
                name: name.into(),
                f: Arc::new(f),
            },
        }
    }

    /// `b_i = a_i`.
    pub fn minimal(arity: usize, d: u64) -> PlusStrategy {
        PlusStrategy::from_rule(arity, d, "minimal", |p| p.last().copied())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn opening(&self) -> u64 {
        self.d
    }

    pub fn replies(&self) -> &ReplyMap {
        &self.replies
    }

    pub fn table(&self) -> Option<&BTreeMap<Vec<u64>, u64>> {
        match &self.replies {
            ReplyMap::Table(t) => Some(t),
            ReplyMap::Rule { .. } => None,
        }
    }

    /// The reply to a ⊖-prefix; errors when undefined or illegal.
    pub fn reply(&self, prefix: &[u64]) -> Result<u64, GameError> {
        if prefix.is_empty() || prefix.len() > self.arity {
            return Err(GameError::BadPrefix {
                prefix: prefix.to_vec(),
                arity: self.arity,
            });
        }
        let b = self
            .replies
            .get(prefix)
            .ok_or_else(|| GameError::Undefined { prefix: prefix.to_vec() })?;
        if b < *prefix.last().unwrap() {
            return Err(GameError::IllegalReply {
                prefix: prefix.to_vec(),
                reply: b,
            });
        }
        Ok(b)
    }

    /// The raw reply, without the legality check.
    pub fn raw_reply(&self, prefix: &[u64]) -> Option<u64> {
        self.replies.get(prefix)
    }

    /// Table of replies on every prefix with moves `< bound`; undefined
    /// prefixes are skipped.
    pub fn tabulate(&self, bound: u64) -> Result<PlusStrategy, GameError> {
        let mut table = BTreeMap::new();
        for len in 1..=self.arity {
            if Grid::new(len, bound).size().is_none() {
                return Err(GameError::TooLarge);
            }
            let mut p = vec![0; len];
            if bound == 0 {
                break;
            }
            loop {
                if let Some(b) = self.replies.get(&p) {
                    table.insert(p.clone(), b);
                }
                if !next_point(&mut p, bound) {
                    break;
                }
            }
        }
        PlusStrategy::from_table(self.arity, self.d, table)
    }
}

/// A ⊖-plan per opening color: `σ_d(b_1..b_{m-1})` is ⊖'s move in round `m`.
#[derive(Clone, Debug)]
pub struct MinusStrategy {
    arity: usize,
    family: Vec<ReplyMap>,
}

impl MinusStrategy {
    pub fn from_tables(arity: usize, tables: Vec<BTreeMap<Vec<u64>, u64>>) -> Result<MinusStrategy, GameError> {
        for t in &tables {
            if let Some(p) = t.keys().find(|p| p.len() >= arity) {
                return Err(GameError::BadPrefix { prefix: p.clone(), arity });
            }
        }
        Ok(MinusStrategy {
            arity,
            family: tables.into_iter().map(ReplyMap::Table).collect(),
        })
    }

    pub fn from_rules(
        arity: usize,
        rules: Vec<BoxedRule>,
    ) -> MinusStrategy {
        MinusStrategy {
            arity,
            family: rules
                .into_iter()
                .enumerate()
                .map(|(d, f)| ReplyMap::Rule {
                    name: format!("sigma_{d}"),
                    f: Arc::from(f),
                })
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of colors covered.
    pub fn colors(&self) -> usize {
        self.family.len()
    }

    /// ⊖'s move against opening color `d` after ⊕'s replies `b_prefix`.
    pub fn next_move(&self, d: u64, b_prefix: &[u64]) -> Result<u64, GameError> {
        let map = self.family.get(d as usize).ok_or(GameError::ColorOutOfRange {
            d,
            colors: self.family.len() as u64,
        })?;
        map.get(b_prefix)
            .ok_or_else(|| GameError::Undefined { prefix: b_prefix.to_vec() })
    }
}
