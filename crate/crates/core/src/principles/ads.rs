//! Transitive pair colorings, the linear orders they encode, and extraction
//! of homogeneous sequences from a hyper-weak Ramsey witness.

use std::cmp::Ordering;

use crate::lexcore::{Coloring, LargenessPolicy};

use super::ramsey::hwrt_check;
use super::{Principle, PrincipleError, PrincipleVerdict, SearchBox};

fn require_two_color_pairs(c: &Coloring) -> Result<(), PrincipleError> {
    if c.arity() != 2 {
        return Err(PrincipleError::Arity { expected: 2, got: c.arity() });
    }
    if c.colors() != 2 {
        return Err(PrincipleError::Premise(format!(
            "transitive colorings use 2 colors, not {}",
            c.colors()
        )));
    }
    Ok(())
}

/// First triple `x < y < z < N` (lex order) with `c(x,y) = c(y,z) ≠ c(x,z)`.
pub fn transitive_violation(c: &Coloring, horizon: u64) -> Result<Option<[u64; 3]>, PrincipleError> {
    require_two_color_pairs(c)?;
    c.require_horizon(horizon)?;
    let n = horizon as usize;
    let mut t = vec![0u64; n * n];
    for x in 0..n {
        for y in x + 1..n {
            t[x * n + y] = c.eval(&[x as u64, y as u64])?;
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let a = t[x * n + y];
            for z in y + 1..n {
                if t[y * n + z] == a && t[x * n + z] != a {
                    return Ok(Some([x as u64, y as u64, z as u64]));
                }
            }
        }
    }
    Ok(None)
}

pub fn transitive_check(c: &Coloring, horizon: u64) -> Result<bool, PrincipleError> {
    Ok(transitive_violation(c, horizon)?.is_none())
}

/// The order `≺` on `[0,N)` encoded by a transitive coloring: for `x < y`,
/// `x ≺ y` iff `c(x,y) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOrder {
    /// `rank[x]` is the position of `x` in `≺`.
    rank: Vec<usize>,
}

impl LinearOrder {
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn cmp(&self, x: u64, y: u64) -> Ordering {
        self.rank[x as usize].cmp(&self.rank[y as usize])
    }

    pub fn precedes(&self, x: u64, y: u64) -> bool {
        self.cmp(x, y) == Ordering::Less
    }

    /// Elements listed in `≺`-increasing order.
    pub fn sorted(&self) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.rank.len() as u64).collect();
        v.sort_by_key(|&x| self.rank[x as usize]);
        v
    }

    /// `≺`-least element of `[lo, hi)`.
    pub fn min_in(&self, lo: u64, hi: u64) -> Option<u64> {
        (lo..hi).min_by_key(|&x| self.rank[x as usize])
    }
}

pub fn to_linear_order(c: &Coloring, horizon: u64) -> Result<LinearOrder, PrincipleError> {
    if let Some([x, y, z]) = transitive_violation(c, horizon)? {
        return Err(PrincipleError::NotTransitive { x, y, z });
    }
    let mut elems: Vec<u64> = (0..horizon).collect();
    let mut err = None;
    elems.sort_by(|&a, &b| {
        if a == b {
            return Ordering::Equal;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let lo_first = match c.eval(&[lo, hi]) {
            Ok(v) => v == 1,
            Err(e) => {
                err.get_or_insert(e);
                true
            }
        };
        if lo_first == (a == lo) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let mut rank = vec![0; horizon as usize];
    for (r, &x) in elems.iter().enumerate() {
        rank[x as usize] = r;
    }
    Ok(LinearOrder { rank })
}

/// Check a stability certificate for a pair coloring exactly inside the
/// horizon: `c(x,y) = c(x, m(x))` for all `m(x) <= y < N`.
fn check_pair_certificate(c: &Coloring, horizon: u64) -> Result<(), PrincipleError> {
    let Some(cert) = c.certificate() else {
        return Ok(());
    };
    for x in 0..horizon {
        let args = cert.complete(&[x])?;
        let s = args[1];
        if s >= horizon {
            continue;
        }
        let v = c.eval(&args)?;
        for y in s.max(x + 1)..horizon {
            let w = c.eval(&[x, y])?;
            if w != v {
                return Err(PrincipleError::CertificateViolation {
                    args: vec![x, y],
                    expected: v,
                    got: w,
                });
            }
        }
    }
    Ok(())
}

/// From a hyper-weak witness `h` for color `d`, take the `≺`-least element
/// `m(i)` of each block `[h(i-1), h(i)-1]` (blocks counted from 1) and chain
/// greedily: start at block 1, then repeatedly the next block `i` with
/// `c(m(current), m(i)) = d`.
///
/// Verified when the chain reaches `threshold` elements; otherwise the
/// partial chain is returned as Exhausted.
pub fn sads_extract(
    c: &Coloring,
    d: u64,
    h: &[u64],
    policy: &LargenessPolicy,
) -> Result<PrincipleVerdict<Vec<u64>>, PrincipleError> {
    require_two_color_pairs(c)?;
    if d >= 2 {
        return Err(PrincipleError::ColorOutOfRange { d, colors: 2 });
    }
    if !hwrt_check(c, d, h, policy)? {
        return Err(PrincipleError::Premise("block function is not a hyper-weak witness".into()));
    }
    check_pair_certificate(c, policy.horizon)?;
    let order = to_linear_order(c, policy.horizon)?;
    let minima: Vec<u64> = h
        .windows(2)
        .map(|w| order.min_in(w[0], w[1]).expect("blocks are non-empty"))
        .collect();
    let mut seq = Vec::new();
    if let Some(&first) = minima.first() {
        seq.push(first);
        let mut cur = first;
        for &m in &minima[1..] {
            if c.eval(&[cur, m])? == d {
                seq.push(m);
                cur = m;
            }
        }
    }
    debug_assert!(is_homogeneous(c, &seq, d).unwrap_or(false));
    if policy.counts_as_infinite(seq.len() as u64) {
        Ok(PrincipleVerdict::verified(Principle::Sads, d, seq))
    } else {
        let mut v = PrincipleVerdict::exhausted(
            Principle::Sads,
            SearchBox::new()
                .with("horizon", policy.horizon)
                .with("blocks", minima.len() as u64),
        )
        .with_color(d)
        .with_note(format!("chain stopped at length {}", seq.len()));
        v.witness = Some(seq);
        Ok(v)
    }
}

/// Every increasing pair of `seq` has color `d`.
pub fn is_homogeneous(c: &Coloring, seq: &[u64], d: u64) -> Result<bool, PrincipleError> {
    for (i, &x) in seq.iter().enumerate() {
        for &y in &seq[i + 1..] {
            let (a, b) = (x.min(y), x.max(y));
            if c.eval(&[a, b])? != d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
