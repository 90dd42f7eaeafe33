use crate::lexcore::{Coloring, LargenessPolicy};

use super::ForcingError;

/// For each `x < N`, the set `{y < N : c(x,y) = 0}` as a bitset.
pub(crate) struct ZeroColumns {
    n: u64,
    words: usize,
    bits: Vec<u64>,
}

impl ZeroColumns {
    pub(crate) fn new(c: &Coloring, policy: &LargenessPolicy) -> Result<ZeroColumns, ForcingError> {
        policy.validate()?;
        if c.arity() != 2 {
            return Err(ForcingError::Arity(c.arity()));
        }
        c.require_horizon(policy.horizon)?;
        let n = policy.horizon;
        let words = (n as usize).div_ceil(64);
        let mut bits = vec![0u64; words * n as usize];
        for x in 0..n {
            for y in 0..n {
                if c.eval(&[x, y])? == 0 {
                    bits[x as usize * words + (y / 64) as usize] |= 1 << (y % 64);
                }
            }
        }
        Ok(ZeroColumns { n, words, bits })
    }

    pub(crate) fn horizon(&self) -> u64 {
        self.n
    }

    /// `y < N` outside `⋃_{x=a}^{b-1} {y : c(x,y) = 0}`.
    pub(crate) fn missing(&self, a: u64, b: u64) -> u64 {
        let mut acc = vec![0u64; self.words];
        for x in a..b {
            let row = &self.bits[x as usize * self.words..(x as usize + 1) * self.words];
            for (w, r) in acc.iter_mut().zip(row) {
                *w |= r;
            }
        }
        let covered: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
        self.n - covered
    }

    /// First block index `i >= 1` (block `[p(i-1), p(i)-1]`) whose zero
    /// union is not cofinite under the policy.
    pub(crate) fn failure(&self, p: &[u64], policy: &LargenessPolicy) -> Result<Option<usize>, ForcingError> {
        if let Some(&last) = p.last() {
            if last > self.n {
                return Err(ForcingError::BeyondHorizon { last, horizon: self.n });
            }
        }
        Ok((1..p.len()).find(|&i| !policy.counts_as_cofinite(self.missing(p[i - 1], p[i]))))
    }

    pub(crate) fn last_block_ok(&self, p: &[u64], policy: &LargenessPolicy) -> bool {
        match p {
            [.., a, b] => policy.counts_as_cofinite(self.missing(*a, *b)),
            _ => true,
        }
    }
}

/// `p ∈ ℙ′`: for every `n < |p| - 1` fewer than `s` of the `y < N` miss
/// `⋃_{x=p(n)}^{p(n+1)-1} {y : c(x,y) = 0}`.
pub fn in_pprime(p: &[u64], c: &Coloring, policy: &LargenessPolicy) -> Result<bool, ForcingError> {
    Ok(pprime_failure(p, c, policy)?.is_none())
}

/// The first block of `p` that keeps it out of `ℙ′`, counted from 1.
pub fn pprime_failure(p: &[u64], c: &Coloring, policy: &LargenessPolicy) -> Result<Option<usize>, ForcingError> {
    if p.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ForcingError::NotIncreasing(p.to_vec()));
    }
    ZeroColumns::new(c, policy)?.failure(p, policy)
}
