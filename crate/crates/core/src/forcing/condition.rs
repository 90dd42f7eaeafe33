use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{parse_predicate, Expr};

use super::ForcingError;

/// A finite strictly increasing sequence `p(0) < .. < p(|p|-1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Condition(Vec<u64>);

impl Condition {
    pub fn new(values: Vec<u64>) -> Result<Condition, ForcingError> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ForcingError::NotIncreasing(values));
        }
        Ok(Condition(values))
    }

    pub fn empty() -> Condition {
        Condition(Vec::new())
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// `p⌢v`.
    pub fn append(&self, v: u64) -> Result<Condition, ForcingError> {
        let mut values = self.0.clone();
        values.push(v);
        Condition::new(values)
    }
}

impl TryFrom<Vec<u64>> for Condition {
    type Error = ForcingError;

    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        Condition::new(v)
    }
}

impl From<Condition> for Vec<u64> {
    fn from(c: Condition) -> Self {
        c.0
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// `q` end-extends `p`, that is `q <= p`.
pub fn extends(q: &Condition, p: &Condition) -> bool {
    q.0.starts_with(&p.0)
}

/// A set of conditions given by a predicate over `len`, `last` and `at(i)`,
/// with the box used to certify that no extension lies in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSetSpec {
    pub name: String,
    pub predicate: Expr,
    /// Longest condition the box contains.
    pub max_len: usize,
    /// Values in the box are below this cap.
    pub value_cap: u64,
}

impl DenseSetSpec {
    pub fn new(name: impl Into<String>, predicate: &str, max_len: usize, value_cap: u64) -> Result<DenseSetSpec, ForcingError> {
        Ok(DenseSetSpec {
            name: name.into(),
            predicate: parse_predicate(predicate)?,
            max_len,
            value_cap,
        })
    }

    /// `D'_n = {p : |p| >= n}`, boxed by length `n` and values below `horizon`.
    pub fn length(n: usize, horizon: u64) -> DenseSetSpec {
        DenseSetSpec {
            name: format!("D'_{n}"),
            predicate: parse_predicate(&format!("le({n},len)")).expect("fixed predicate"),
            max_len: n,
            value_cap: horizon,
        }
    }

    /// `D'_1, .., D'_n`.
    pub fn lengths(n: usize, horizon: u64) -> Vec<DenseSetSpec> {
        (1..=n).map(|i| DenseSetSpec::length(i, horizon)).collect()
    }

    pub fn contains(&self, p: &[u64]) -> Result<bool, ForcingError> {
        Ok(self.predicate.eval_condition(p)? != 0)
    }
}
