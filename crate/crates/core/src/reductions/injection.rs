//! Range and ACA colorings of an injection, with the range-decision
//! procedure driven by a lexicographic embedding.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::lexcore::{Coloring, LexEmbedding, MapBody, NatMap};

use super::ReductionError;

/// A total map `f: ℕ → ℕ`, assumed injective on whatever box is inspected.
#[derive(Clone, Debug)]
pub struct Injection {
    map: NatMap,
}

impl Injection {
    pub fn new(map: NatMap) -> Result<Injection, ReductionError> {
        if map.arity() != 1 {
            return Err(ReductionError::Arity { expected: 1, got: map.arity() });
        }
        Ok(Injection { map })
    }

    pub fn parse(text: &str) -> Result<Injection, ReductionError> {
        Injection::new(NatMap::parse(1, text)?)
    }

    pub fn from_values(values: Vec<u64>) -> Result<Injection, ReductionError> {
        let n = values.len() as u64;
        Injection::new(NatMap::table(1, n, values)?)
    }

    pub fn map(&self) -> &NatMap {
        &self.map
    }

    pub fn eval(&self, x: u64) -> Result<u64, ReductionError> {
        Ok(self.map.eval(&[x])?)
    }

    /// `f(0), .., f(bound-1)`.
    pub fn values(&self, bound: u64) -> Result<Vec<u64>, ReductionError> {
        (0..bound).map(|j| self.eval(j)).collect()
    }

    /// First collision `f(i) = f(j)`, `i < j < bound`.
    pub fn check_injective(&self, bound: u64) -> Result<(), ReductionError> {
        let mut seen = std::collections::HashMap::new();
        for j in 0..bound {
            let v = self.eval(j)?;
            if let Some(&i) = seen.get(&v) {
                return Err(ReductionError::NotInjective { i, j, value: v });
            }
            seen.insert(v, j);
        }
        Ok(())
    }

    /// `f[z] = {f(0), .., f(z)}`, sorted.
    pub fn stage(&self, z: u64) -> Result<Vec<u64>, ReductionError> {
        let mut v = self.values(z + 1)?;
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    /// `x ∈ f[z]`.
    pub fn in_stage(&self, x: u64, z: u64) -> Result<bool, ReductionError> {
        for j in 0..=z {
            if self.eval(j)? == x {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&describe(&self.map))
    }
}

pub(crate) fn describe(m: &NatMap) -> String {
    match m.body() {
        MapBody::Expr(e) => e.to_string(),
        MapBody::Table(t) => format!("table[{}]", t.horizon),
        MapBody::Native { name, .. } => name.clone(),
    }
}

/// `c(x,y) = 1` iff `x ∈ {f(0), .., f(y-1)}`.
pub fn range_coloring(f: &Injection) -> Coloring {
    let g = f.clone();
    Coloring::native(2, 2, format!("range({f})"), move |a| {
        let (x, y) = (a[0], a[1]);
        for j in 0..y {
            if g.map.eval(&[j])? == x {
                return Ok(1);
            }
        }
        Ok(0)
    })
    .expect("two colors, arity two")
}

/// `c(x,y,z) = 0` iff every `w <= x` has the same membership in `f[y]` and
/// `f[z]`.
pub fn aca_coloring(f: &Injection) -> Coloring {
    let g = f.clone();
    Coloring::native(3, 2, format!("aca({f})"), move |a| {
        let (x, lo, hi) = (a[0], a[1].min(a[2]), a[1].max(a[2]));
        let mut base = HashSet::new();
        for j in 0..=lo {
            let v = g.map.eval(&[j])?;
            if v <= x {
                base.insert(v);
            }
        }
        for j in lo + 1..=hi {
            let v = g.map.eval(&[j])?;
            if v <= x && !base.contains(&v) {
                return Ok(1);
            }
        }
        Ok(0)
    })
    .expect("two colors, arity three")
}

/// An embedding with `aca_coloring(f) ∘ h ≡ 0`, plus the stages it used.
#[derive(Clone, Debug)]
pub struct ZeroEmbedding {
    pub embedding: LexEmbedding,
    /// `s(x)` for `x < M`.
    pub stages: Vec<u64>,
}

/// `h(x,y,z) = (x, s(x)+y, s(x)+y+z+1)` on `[0,M)^3`, where
/// `s(x) = max{j < B : f(j) <= x}` (0 when there is none) is the stage
/// after which `f` adds nothing below `x + 1`, as far as `[0,B)` shows.
///
/// Every stage `h` touches must lie inside the probe, so `s(x) + 2M <= B`
/// is required.
pub fn build_zero_embedding(f: &Injection, m: u64, b: u64) -> Result<ZeroEmbedding, ReductionError> {
    if m == 0 {
        return Err(ReductionError::Premise("grid must be positive".into()));
    }
    f.check_injective(b)?;
    let values = f.values(b)?;
    let mut stages = Vec::with_capacity(m as usize);
    for x in 0..m {
        let s = values.iter().rposition(|&v| v <= x).unwrap_or(0) as u64;
        let needed = s.checked_add(2 * m).ok_or(ReductionError::TooLarge)?;
        if needed > b {
            return Err(ReductionError::NotStabilized { x, needed, bound: b });
        }
        stages.push(s);
    }
    let embedding = LexEmbedding::from_fn(3, m, true, |p| {
        let s = stages[p[0] as usize];
        vec![p[0], s + p[1], s + p[1] + p[2] + 1]
    })?;
    Ok(ZeroEmbedding { embedding, stages })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum RangeDecision {
    /// `y` is the first index with `h1(x,y,0) = h1(x,y+1,0)`; `stage` is
    /// `h2(x,y+1,0)` and `member` is `x ∈ f[stage]`.
    Decided { y: u64, stage: u64, member: bool },
    Exhausted { searched: u64 },
}

impl RangeDecision {
    pub fn member(&self) -> Option<bool> {
        match self {
            RangeDecision::Decided { member, .. } => Some(*member),
            RangeDecision::Exhausted { .. } => None,
        }
    }
}

/// Decide `x ∈ range(f)` from an embedding `h` with `aca_coloring(f) ∘ h ≡ 0`.
///
/// Looks at `y < budget` with `y + 1` inside the grid.
pub fn range_decide(f: &Injection, h: &LexEmbedding, x: u64, budget: u64) -> Result<RangeDecision, ReductionError> {
    if h.arity() != 3 {
        return Err(ReductionError::Arity { expected: 3, got: h.arity() });
    }
    if x >= h.grid() {
        return Err(ReductionError::Premise(format!("x = {x} is outside the grid [0,{})", h.grid())));
    }
    let limit = budget.min(h.grid().saturating_sub(1));
    for y in 0..limit {
        let here = h.image(&[x, y, 0]).expect("inside grid");
        let next = h.image(&[x, y + 1, 0]).expect("inside grid");
        if here[0] == next[0] {
            let stage = next[1];
            return Ok(RangeDecision::Decided {
                y,
                stage,
                member: f.in_stage(x, stage)?,
            });
        }
    }
    Ok(RangeDecision::Exhausted { searched: limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexcore::{check_embedding, compose};

    fn double() -> Injection {
        Injection::parse("mul(2,x1)").unwrap()
    }

    #[test]
    fn range_coloring_examples() {
        let c = range_coloring(&double());
        assert_eq!(c.eval(&[4, 1]).unwrap(), 0);
        assert_eq!(c.eval(&[4, 3]).unwrap(), 1);
        assert_eq!(c.eval(&[0, 0]).unwrap(), 0);
        let id = range_coloring(&Injection::parse("x1").unwrap());
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(id.eval(&[x, y]).unwrap(), u64::from(x < y));
            }
        }
    }

    #[test]
    fn aca_coloring_examples() {
        let c = aca_coloring(&double());
        assert_eq!(c.eval(&[1, 0, 1]).unwrap(), 0);
        assert_eq!(c.eval(&[2, 0, 1]).unwrap(), 1);
        assert_eq!(c.eval(&[2, 1, 0]).unwrap(), 1);
        for x in 0..4 {
            assert_eq!(c.eval(&[x, 3, 3]).unwrap(), 0);
        }
    }

    #[test]
    fn zero_embedding_examples() {
        let z = build_zero_embedding(&double(), 3, 12).unwrap();
        assert_eq!(z.stages, vec![0, 0, 1]);
        let z = build_zero_embedding(&Injection::parse("x1").unwrap(), 3, 12).unwrap();
        assert_eq!(z.stages, vec![0, 1, 2]);
        assert_eq!(z.embedding.image(&[2, 1, 0]).unwrap(), &[2, 3, 4]);

        let z = build_zero_embedding(&double(), 2, 4).unwrap();
        assert!(check_embedding(&z.embedding).ok);
        let t = compose(&aca_coloring(&double()), &z.embedding).unwrap();
        assert_eq!(t.tabulate(2).unwrap(), vec![0; 8]);
    }

    #[test]
    fn zero_embedding_needs_room() {
        let err = build_zero_embedding(&Injection::parse("x1").unwrap(), 4, 8).unwrap_err();
        assert!(matches!(err, ReductionError::NotStabilized { x: 1, .. }));
        let err = build_zero_embedding(&Injection::parse("0").unwrap(), 2, 4).unwrap_err();
        assert!(matches!(err, ReductionError::NotInjective { i: 0, j: 1, .. }));
    }

    #[test]
    fn decide_examples() {
        let f = double();
        let z = build_zero_embedding(&f, 6, 16).unwrap();
        assert_eq!(range_decide(&f, &z.embedding, 4, 10).unwrap().member(), Some(true));
        assert_eq!(range_decide(&f, &z.embedding, 5, 10).unwrap().member(), Some(false));
        assert_eq!(
            range_decide(&f, &z.embedding, 5, 0).unwrap(),
            RangeDecision::Exhausted { searched: 0 }
        );
        let id = Injection::parse("x1").unwrap();
        let z = build_zero_embedding(&id, 4, 16).unwrap();
        for x in 0..4 {
            assert_eq!(range_decide(&id, &z.embedding, x, 4).unwrap().member(), Some(true));
        }
    }
}
