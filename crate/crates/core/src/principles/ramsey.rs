//! Ramsey-type principles for pairs, with `c` read on pairs `x < y` only.

use crate::lexcore::{Coloring, LargenessPolicy};

use super::{Principle, PrincipleError, PrincipleVerdict, SearchBox, MAX_COLORS};

/// Node budget for the exponential block-function search.
pub const HWRT_NODE_BUDGET: u64 = 20_000_000;

fn require_pairs(c: &Coloring) -> Result<(), PrincipleError> {
    if c.arity() != 2 {
        return Err(PrincipleError::Arity { expected: 2, got: c.arity() });
    }
    Ok(())
}

/// Upper-triangular color table on `[0,N)^2`.
struct PairTable {
    n: usize,
    colors: Vec<u64>,
}

impl PairTable {
    fn new(c: &Coloring, n: u64) -> Result<PairTable, PrincipleError> {
        require_pairs(c)?;
        c.require_horizon(n)?;
        let nn = n as usize;
        let mut colors = vec![0; nn * nn];
        for x in 0..nn {
            for y in x + 1..nn {
                colors[x * nn + y] = c.eval(&[x as u64, y as u64])?;
            }
        }
        Ok(PairTable { n: nn, colors })
    }

    fn get(&self, x: usize, y: usize) -> u64 {
        self.colors[x * self.n + y]
    }
}

/// Lex-least `t`-subset of `[0,N)` homogeneous for some color.
pub fn rt_search(c: &Coloring, policy: &LargenessPolicy) -> Result<PrincipleVerdict<Vec<u64>>, PrincipleError> {
    policy.validate()?;
    let k = c.colors();
    if k > MAX_COLORS.min(64) {
        return Err(PrincipleError::TooManyColors(k));
    }
    let table = PairTable::new(c, policy.horizon)?;
    let t = policy.threshold as usize;
    let searched = SearchBox::new().with("horizon", policy.horizon).with("threshold", policy.threshold);
    if t <= 1 {
        let h: Vec<u64> = (0..t as u64).collect();
        if t as u64 <= policy.horizon {
            return Ok(PrincipleVerdict::verified(Principle::Rt, 0, h));
        }
    }
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut chosen = Vec::with_capacity(t);
    if let Some(mask) = rt_dfs(&table, t, all, &mut chosen) {
        let d = mask.trailing_zeros() as u64;
        return Ok(PrincipleVerdict::verified(
            Principle::Rt,
            d,
            chosen.iter().map(|&x| x as u64).collect(),
        ));
    }
    Ok(PrincipleVerdict::exhausted(Principle::Rt, searched))
}

/// `mask` holds the colors every pair chosen so far is compatible with.
fn rt_dfs(table: &PairTable, t: usize, mask: u64, chosen: &mut Vec<usize>) -> Option<u64> {
    if chosen.len() == t {
        return Some(mask);
    }
    let start = chosen.last().map_or(0, |&x| x + 1);
    let need = t - chosen.len();
    if start + need > table.n {
        return None;
    }
    for y in start..=table.n - need {
        let mut m = mask;
        for &x in chosen.iter() {
            m &= 1u64 << table.get(x, y);
            if m == 0 {
                break;
            }
        }
        if m == 0 {
            continue;
        }
        chosen.push(y);
        if let Some(found) = rt_dfs(table, t, m, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Number of `y` with `x < y < N` and `c(x,y) = d`.
pub fn row_hits(c: &Coloring, x: u64, d: u64, horizon: u64) -> Result<u64, PrincipleError> {
    let mut hits = 0;
    for y in x + 1..horizon {
        if c.eval(&[x, y])? == d {
            hits += 1;
        }
    }
    Ok(hits)
}

/// `|H| >= t` and every row of `H` has at least `t` hits of color `d`.
pub fn wrt_check(c: &Coloring, h: &[u64], d: u64, policy: &LargenessPolicy) -> Result<bool, PrincipleError> {
    require_pairs(c)?;
    c.require_horizon(policy.horizon)?;
    if !policy.counts_as_infinite(h.len() as u64) {
        return Ok(false);
    }
    for &x in h {
        if x >= policy.horizon || !policy.counts_as_infinite(row_hits(c, x, d, policy.horizon)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lex-least `(d, H)` with `|H| = t` passing [`wrt_check`].
pub fn wrt_search(c: &Coloring, policy: &LargenessPolicy) -> Result<PrincipleVerdict<Vec<u64>>, PrincipleError> {
    policy.validate()?;
    require_pairs(c)?;
    c.require_horizon(policy.horizon)?;
    let t = policy.threshold as usize;
    for d in 0..c.colors() {
        let mut h = Vec::with_capacity(t);
        for x in 0..policy.horizon {
            if h.len() == t {
                break;
            }
            if policy.counts_as_infinite(row_hits(c, x, d, policy.horizon)?) {
                h.push(x);
            }
        }
        if h.len() == t {
            return Ok(PrincipleVerdict::verified(Principle::Wrt, d, h));
        }
    }
    Ok(PrincipleVerdict::exhausted(
        Principle::Wrt,
        SearchBox::new().with("horizon", policy.horizon).with("threshold", policy.threshold),
    ))
}

/// 2D prefix sums of the indicator `x < y ∧ c(x,y) = d` on `[0,N)^2`.
struct RectCounter {
    n: usize,
    sums: Vec<u32>,
}

impl RectCounter {
    fn new(table: &PairTable, d: u64) -> RectCounter {
        let n = table.n;
        let w = n + 1;
        let mut sums = vec![0u32; w * w];
        for x in 0..n {
            for y in 0..n {
                let hit = (x < y && table.get(x, y) == d) as u32;
                sums[(x + 1) * w + y + 1] = hit + sums[x * w + y + 1] + sums[(x + 1) * w + y] - sums[x * w + y];
            }
        }
        RectCounter { n, sums }
    }

    /// Any hit in `[x0, x1) × [y0, y1)`?
    fn any(&self, x0: usize, x1: usize, y0: usize, y1: usize) -> bool {
        let w = self.n + 1;
        let s = |x: usize, y: usize| self.sums[x * w + y];
        s(x1, y1) + s(x0, y0) > s(x0, y1) + s(x1, y0)
    }

    fn total(&self) -> u32 {
        self.sums[self.n * (self.n + 1) + self.n]
    }
}

fn require_increasing(h: &[u64]) -> Result<(), PrincipleError> {
    if h.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PrincipleError::NotIncreasing(h.to_vec()));
    }
    Ok(())
}

/// Every rectangle `block(i1) × block(i2)`, `0 < i1 < i2 <= L`, where
/// `block(i) = [h(i-1), h(i)-1]`, contains a pair of color `d`.
pub fn hwrt_check(c: &Coloring, d: u64, h: &[u64], policy: &LargenessPolicy) -> Result<bool, PrincipleError> {
    require_pairs(c)?;
    require_increasing(h)?;
    let top = h.last().copied().unwrap_or(0);
    if top > policy.horizon {
        return Err(PrincipleError::Premise(format!(
            "block function reaches {top}, beyond horizon {}",
            policy.horizon
        )));
    }
    let l = h.len().saturating_sub(1);
    for i2 in 2..=l {
        for i1 in 1..i2 {
            let mut hit = false;
            'scan: for x in h[i1 - 1]..h[i1] {
                for y in h[i2 - 1]..h[i2] {
                    if c.eval(&[x, y])? == d {
                        hit = true;
                        break 'scan;
                    }
                }
            }
            if !hit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lex-least `(d, h(0) < .. < h(L))` with `h(L) <= N` passing [`hwrt_check`].
///
/// With `color` fixed, the verdict is Refuted when `d` colors no increasing
/// pair below the horizon and `L >= 2`.
pub fn hwrt_search(
    c: &Coloring,
    policy: &LargenessPolicy,
    l: usize,
    color: Option<u64>,
) -> Result<PrincipleVerdict<Vec<u64>>, PrincipleError> {
    policy.validate()?;
    let table = PairTable::new(c, policy.horizon)?;
    if let Some(d) = color {
        if d >= c.colors() {
            return Err(PrincipleError::ColorOutOfRange { d, colors: c.colors() });
        }
    }
    let colors: Vec<u64> = match color {
        Some(d) => vec![d],
        None => (0..c.colors()).collect(),
    };
    let mut budget_hit = false;
    let mut nodes_used = 0;
    for &d in &colors {
        let rc = RectCounter::new(&table, d);
        if l >= 2 && rc.total() == 0 {
            if color.is_some() {
                return Ok(PrincipleVerdict::refuted(
                    Principle::Hwrt,
                    format!("color {d} occurs on no pair x < y < {}", policy.horizon),
                )
                .with_color(d));
            }
            continue;
        }
        let mut h = Vec::with_capacity(l + 1);
        let mut nodes = 0u64;
        match hwrt_dfs(&rc, l, &mut h, &mut nodes) {
            Some(true) => return Ok(PrincipleVerdict::verified(Principle::Hwrt, d, h.iter().map(|&v| v as u64).collect())),
            Some(false) => {}
            None => budget_hit = true,
        }
        nodes_used += nodes;
    }
    let mut searched = SearchBox::new().with("horizon", policy.horizon).with("blocks", l as u64);
    if budget_hit {
        searched = searched.with("nodes", nodes_used);
    }
    Ok(PrincipleVerdict::exhausted(Principle::Hwrt, searched))
}

/// `Some(true)` found, `Some(false)` none, `None` budget exceeded.
fn hwrt_dfs(rc: &RectCounter, l: usize, h: &mut Vec<usize>, nodes: &mut u64) -> Option<bool> {
    *nodes += 1;
    if *nodes > HWRT_NODE_BUDGET {
        return None;
    }
    let k = h.len();
    if k == l + 1 {
        return Some(true);
    }
    let start = h.last().map_or(0, |&v| v + 1);
    let need = l + 1 - k;
    if start + need - 1 > rc.n {
        return Some(false);
    }
    for v in start..=rc.n + 1 - need {
        // Closing block k (= [h(k-1), v)) against every earlier block.
        let ok = k < 2 || (1..k).all(|i1| rc.any(h[i1 - 1], h[i1], h[k - 1], v));
        if !ok {
            continue;
        }
        h.push(v);
        match hwrt_dfs(rc, l, h, nodes) {
            Some(false) => {
                h.pop();
            }
            other => return other,
        }
    }
    Some(false)
}
