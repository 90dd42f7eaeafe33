use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::LexError;

/// A point of ℕ^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tuple(Vec<u64>);

impl Tuple {
    pub fn new(coords: Vec<u64>) -> Result<Tuple, LexError> {
        if coords.is_empty() {
            return Err(LexError::ZeroArity);
        }
        Ok(Tuple(coords))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic comparison of two tuples of equal arity.
pub fn lex_cmp(a: &Tuple, b: &Tuple) -> Result<Ordering, LexError> {
    lex_cmp_slices(a.coords(), b.coords())
}

pub fn lex_cmp_slices(a: &[u64], b: &[u64]) -> Result<Ordering, LexError> {
    if a.len() != b.len() {
        return Err(LexError::ArityMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    // Slice ordering on equal lengths is exactly the lexicographic order.
    Ok(a.cmp(b))
}

/// The box `[0, extent)^arity`, enumerated row-major (first coordinate most
/// significant), which is the lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub arity: usize,
    pub extent: u64,
}

impl Grid {
    pub fn new(arity: usize, extent: u64) -> Grid {
        Grid { arity, extent }
    }

    /// Number of points, or `None` when it does not fit in `usize`.
    pub fn size(&self) -> Option<usize> {
        let e = usize::try_from(self.extent).ok()?;
        let mut n: usize = 1;
        for _ in 0..self.arity {
            n = n.checked_mul(e)?;
        }
        Some(n)
    }

    pub fn contains(&self, p: &[u64]) -> bool {
        p.len() == self.arity && p.iter().all(|&v| v < self.extent)
    }

    pub fn index(&self, p: &[u64]) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let mut idx: usize = 0;
        for &v in p {
            idx = idx * self.extent as usize + v as usize;
        }
        Some(idx)
    }

    pub fn point(&self, mut idx: usize) -> Vec<u64> {
        let mut p = vec![0; self.arity];
        for slot in p.iter_mut().rev() {
            *slot = (idx as u64) % self.extent;
            idx /= self.extent as usize;
        }
        p
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let n = self.size().unwrap_or(0);
        (0..n).map(move |i| self.point(i))
    }
}

/// Advance `p` to its lexicographic successor inside `[0, extent)^n`;
/// returns false after the last point.
pub fn next_point(p: &mut [u64], extent: u64) -> bool {
    for slot in p.iter_mut().rev() {
        *slot += 1;
        if *slot < extent {
            return true;
        }
        *slot = 0;
    }
    false
}
