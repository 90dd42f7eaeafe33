//! From a block function whose blocks each see color `d` infinitely often
//! to a hyper-weak Ramsey witness.

use crate::lexcore::{Coloring, LargenessPolicy};
use crate::principles::{Principle, PrincipleVerdict, SearchBox};

use super::ReductionError;

/// `ys[i-1]` lists the `y < N` with some `x` in block `i` of `g`, `x < y`,
/// `c(x,y) = d`.
fn block_hits(c: &Coloring, d: u64, g: &[u64], n: u64) -> Result<Vec<Vec<u64>>, ReductionError> {
    let mut out = Vec::with_capacity(g.len().saturating_sub(1));
    for w in g.windows(2) {
        let mut ys = Vec::new();
        for y in w[0] + 1..n {
            for x in w[0]..w[1].min(y) {
                if c.eval(&[x, y])? == d {
                    ys.push(y);
                    break;
                }
            }
        }
        out.push(ys);
    }
    Ok(out)
}

/// `f_i(z)`: the first hit of block `i` at or after `z`.
fn first_hit(ys: &[u64], z: u64) -> Option<u64> {
    let k = ys.partition_point(|&y| y < z);
    ys.get(k).copied()
}

/// Thin `g` to `h(ℓ) = g(i_ℓ)`, `ℓ <= L`, where `i_0 = 1` and `i_{ℓ+1}` is
/// the least `i > i_ℓ` with `g(i) > f_{i_k}(g(i_ℓ))` for every `k <= ℓ`.
///
/// Exhausted, with the prefix built so far, when some `f_i` has no value
/// below the horizon or `g` runs out.
pub fn hwrt_normalize(
    c: &Coloring,
    d: u64,
    g: &[u64],
    policy: &LargenessPolicy,
    l: usize,
) -> Result<PrincipleVerdict<Vec<u64>>, ReductionError> {
    policy.validate()?;
    if c.arity() != 2 {
        return Err(ReductionError::Arity { expected: 2, got: c.arity() });
    }
    if d >= c.colors() {
        return Err(ReductionError::Premise(format!("color {d} is not below {}", c.colors())));
    }
    if g.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ReductionError::Premise(format!("{g:?} is not strictly increasing")));
    }
    let n = policy.horizon;
    if let Some(&top) = g.last() {
        if top > n {
            return Err(ReductionError::Premise(format!("g reaches {top}, beyond horizon {n}")));
        }
    }
    c.require_horizon(n)?;
    let hits = block_hits(c, d, g, n)?;
    let exhausted = |h: Vec<u64>, why: String| {
        let mut v = PrincipleVerdict::exhausted(
            Principle::Hwrt,
            SearchBox::new()
                .with("horizon", n)
                .with("blocks", hits.len() as u64)
                .with("steps", l as u64),
        )
        .with_color(d)
        .with_note(why);
        v.witness = Some(h);
        v
    };
    if g.len() < 2 {
        return Ok(exhausted(Vec::new(), "g has no block 1".into()));
    }
    let mut idx = vec![1usize];
    let mut h = vec![g[1]];
    while h.len() <= l {
        let cur = *idx.last().expect("nonempty");
        let z = g[cur];
        let mut bound = 0;
        for &i in &idx {
            match first_hit(&hits[i - 1], z) {
                Some(y) => bound = bound.max(y),
                None => return Ok(exhausted(h, format!("f_{i}({z}) has no value below {n}"))),
            }
        }
        match (cur + 1..g.len()).find(|&i| g[i] > bound) {
            Some(i) => {
                idx.push(i);
                h.push(g[i]);
            }
            None => return Ok(exhausted(h, format!("no g(i) above {bound}"))),
        }
    }
    Ok(PrincipleVerdict::verified(Principle::Hwrt, d, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::principles::hwrt_check;

    #[test]
    fn constant_coloring_shifts_identity() {
        let c = Coloring::constant(2, 2, 1).unwrap();
        let g: Vec<u64> = (0..=20).collect();
        let p = LargenessPolicy::new(20, 4, 0, 1).unwrap();
        let v = hwrt_normalize(&c, 1, &g, &p, 6).unwrap();
        assert_eq!(v.witness, Some(vec![1, 2, 3, 4, 5, 6, 7]));
    }

    #[test]
    fn upper_triangle_is_hit_everywhere() {
        let c = Coloring::parse(2, 2, "le(x1,x2)").unwrap();
        let g: Vec<u64> = (0..=30).collect();
        let p = LargenessPolicy::new(30, 4, 0, 1).unwrap();
        let v = hwrt_normalize(&c, 1, &g, &p, 8).unwrap();
        let h = v.witness.unwrap();
        assert!(h.windows(2).all(|w| w[0] < w[1]));
        assert!(hwrt_check(&c, 1, &h, &p).unwrap());
    }

    #[test]
    fn small_horizon_is_exhausted() {
        let c = Coloring::constant(2, 2, 1).unwrap();
        let g: Vec<u64> = (0..=5).collect();
        let p = LargenessPolicy::new(5, 2, 0, 1).unwrap();
        let v = hwrt_normalize(&c, 1, &g, &p, 10).unwrap();
        assert!(v.outcome.is_exhausted());
        assert_eq!(v.witness, Some(vec![1, 2, 3, 4, 5]));
    }
}
