use serde::{Deserialize, Serialize};

use super::LexError;

/// The finite stand-in for "infinite", "cofinite" and nested `∃^∞`.
///
/// A subset of `[0, horizon)` counts as infinite when it has at least
/// `threshold` elements and as cofinite when fewer than `slack` elements of
/// `[0, horizon)` are missing; a witness beyond the frontier is one `>= frontier`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargenessPolicy {
    pub horizon: u64,
    pub threshold: u64,
    pub frontier: u64,
    pub slack: u64,
}

impl LargenessPolicy {
    pub fn new(horizon: u64, threshold: u64, frontier: u64, slack: u64) -> Result<Self, LexError> {
        let p = LargenessPolicy {
            horizon,
            threshold,
            frontier,
            slack,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), LexError> {
        if self.threshold > self.horizon {
            return Err(LexError::Policy(format!(
                "threshold {} exceeds horizon {}",
                self.threshold, self.horizon
            )));
        }
        if self.frontier >= self.horizon {
            return Err(LexError::Policy(format!(
                "frontier {} is not below horizon {}",
                self.frontier, self.horizon
            )));
        }
        if self.slack > self.horizon {
            return Err(LexError::Policy(format!(
                "slack {} exceeds horizon {}",
                self.slack, self.horizon
            )));
        }
        Ok(())
    }

    pub fn counts_as_infinite(&self, size: u64) -> bool {
        size >= self.threshold
    }

    /// `missing` is the size of the complement within `[0, horizon)`.
    pub fn counts_as_cofinite(&self, missing: u64) -> bool {
        missing < self.slack
    }
}
