use std::cell::Cell;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::lexcore::{Coloring, LargenessPolicy};
use crate::principles::{Outcome, SearchBox};

use super::condition::{Condition, DenseSetSpec};
use super::pprime::ZeroColumns;
use super::ForcingError;

/// Enumeration nodes one construction may visit.
pub const FORCING_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Walk {
    Stopped,
    Done,
    OutOfBudget,
}

/// Length-lex walk over the strictly increasing extensions of `base` whose
/// length lies in `lens` and whose new values are below `cap`. `keep` prunes
/// partial sequences; `visit` returns `true` to stop.
struct Walker<'a> {
    cap: u64,
    nodes: &'a Cell<u64>,
}

impl Walker<'_> {
    fn tick(&self) -> bool {
        self.nodes.set(self.nodes.get() + 1);
        self.nodes.get() <= FORCING_NODE_BUDGET
    }

    fn walk(
        &self,
        base: &[u64],
        lens: RangeInclusive<usize>,
        keep: &mut dyn FnMut(&[u64]) -> bool,
        visit: &mut dyn FnMut(&[u64]) -> Result<bool, ForcingError>,
    ) -> Result<Walk, ForcingError> {
        for len in lens {
            if len < base.len() {
                continue;
            }
            let mut seq = base.to_vec();
            let r = self.dfs(&mut seq, len, keep, visit)?;
            if r != Walk::Done {
                return Ok(r);
            }
        }
        Ok(Walk::Done)
    }

    fn dfs(
        &self,
        seq: &mut Vec<u64>,
        len: usize,
        keep: &mut dyn FnMut(&[u64]) -> bool,
        visit: &mut dyn FnMut(&[u64]) -> Result<bool, ForcingError>,
    ) -> Result<Walk, ForcingError> {
        if !self.tick() {
            return Ok(Walk::OutOfBudget);
        }
        if seq.len() == len {
            return Ok(if visit(seq)? { Walk::Stopped } else { Walk::Done });
        }
        let lo = seq.last().map_or(0, |v| v + 1);
        let room = (len - seq.len()) as u64;
        for v in lo..self.cap {
            if self.cap - v < room {
                break;
            }
            seq.push(v);
            if keep(seq) {
                let r = self.dfs(seq, len, keep, visit)?;
                if r != Walk::Done {
                    seq.pop();
                    return Ok(r);
                }
            }
            seq.pop();
        }
        Ok(Walk::Done)
    }
}

fn lens_from(p: &[u64], max_len: usize) -> RangeInclusive<usize> {
    p.len()..=max_len.max(p.len())
}

/// Some `r <= p` inside the spec's box lies in the set; `None` when the
/// budget ran out.
fn has_extension(p: &[u64], spec: &DenseSetSpec, cap: u64, nodes: &Cell<u64>) -> Result<Option<bool>, ForcingError> {
    let w = Walker { cap, nodes };
    match w.walk(p, lens_from(p, spec.max_len), &mut |_| true, &mut |r| spec.contains(r))? {
        Walk::Stopped => Ok(Some(true)),
        Walk::Done => Ok(Some(false)),
        Walk::OutOfBudget => Ok(None),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DispositionKind {
    /// The condition lies in the set.
    Met,
    /// No extension of the condition inside the box lies in the set.
    NoExtension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disposition {
    pub set: String,
    pub kind: DispositionKind,
    pub condition: Condition,
    pub max_len: usize,
    /// Effective value cap: the spec's cap, clipped to the horizon.
    pub value_cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneGen {
    /// The final condition, read as a prefix of `g`.
    pub g: Vec<u64>,
    pub dispositions: Vec<Disposition>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// Meet each set in turn: from the current condition `q`, walk the
/// `ℙ′`-conditions `p <= q` in length-lex order (starting with `q`) and stop
/// at the first `p` that either lies in the set or has no extension in it
/// within the set's box.
pub fn one_gen_build(
    c: &Coloring,
    denses: &[DenseSetSpec],
    q0: &Condition,
    policy: &LargenessPolicy,
) -> Result<OneGen, ForcingError> {
    let zeros = ZeroColumns::new(c, policy)?;
    if zeros.failure(q0.values(), policy)?.is_some() {
        return Err(ForcingError::NotInPPrime(q0.values().to_vec()));
    }
    let nodes = Cell::new(0);
    let mut q = q0.clone();
    let mut dispositions = Vec::with_capacity(denses.len());
    for (k, spec) in denses.iter().enumerate() {
        let cap = spec.value_cap.min(zeros.horizon());
        let w = Walker { cap, nodes: &nodes };
        let mut found = None;
        let mut starved = false;
        let walk = w.walk(
            q.values(),
            lens_from(q.values(), spec.max_len),
            &mut |s| zeros.last_block_ok(s, policy),
            &mut |p| {
                if spec.contains(p)? {
                    found = Some((p.to_vec(), DispositionKind::Met));
                    return Ok(true);
                }
                match has_extension(p, spec, cap, &nodes)? {
                    Some(true) => Ok(false),
                    Some(false) => {
                        found = Some((p.to_vec(), DispositionKind::NoExtension));
                        Ok(true)
                    }
                    None => {
                        starved = true;
                        Ok(true)
                    }
                }
            },
        )?;
        let out_of_budget = walk == Walk::OutOfBudget || starved;
        match found {
            Some((p, kind)) if !out_of_budget => {
                q = Condition::new(p)?;
                dispositions.push(Disposition {
                    set: spec.name.clone(),
                    kind,
                    condition: q.clone(),
                    max_len: spec.max_len,
                    value_cap: cap,
                });
            }
            _ => {
                let searched = SearchBox::new()
                    .with("set", k as u64)
                    .with("horizon", zeros.horizon())
                    .with("nodes", nodes.get());
                return Ok(OneGen {
                    g: q.values().to_vec(),
                    dispositions,
                    outcome: Outcome::Exhausted(searched),
                });
            }
        }
    }
    Ok(OneGen {
        g: q.values().to_vec(),
        dispositions,
        outcome: Outcome::Verified,
    })
}

fn any_in_box(p: &mut Vec<u64>, max_len: usize, cap: u64, spec: &DenseSetSpec) -> Result<bool, ForcingError> {
    if spec.contains(p)? {
        return Ok(true);
    }
    if p.len() >= max_len {
        return Ok(false);
    }
    let lo = p.last().map_or(0, |v| v + 1);
    for v in lo..cap {
        p.push(v);
        let hit = any_in_box(p, max_len, cap, spec)?;
        p.pop();
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Re-derive a disposition from scratch: the condition is in `ℙ′`, and
/// either satisfies the predicate or has no extension in the box that does.
pub fn recheck(d: &Disposition, spec: &DenseSetSpec, c: &Coloring, policy: &LargenessPolicy) -> Result<bool, ForcingError> {
    if super::pprime_failure(d.condition.values(), c, policy)?.is_some() {
        return Ok(false);
    }
    match d.kind {
        DispositionKind::Met => spec.contains(d.condition.values()),
        DispositionKind::NoExtension => {
            let mut p = d.condition.values().to_vec();
            Ok(!any_in_box(&mut p, d.max_len, d.value_cap, spec)?)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S1Step {
    /// `q_n = q⌢h(n)`.
    pub q_n: Condition,
    /// First proper extension of `q_n` in the set.
    pub r_n: Condition,
    pub r_in_pprime: bool,
    /// First block of `r_n` (counted from 1) whose zero union is coinfinite.
    pub failure_block: Option<usize>,
    /// `|⋃_{x=h(n)}^{h(n+1)-1} {y < N : c(x,y) = 1}|`.
    pub ones: u64,
    pub ones_infinite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S1Run {
    pub h: Vec<u64>,
    pub steps: Vec<S1Step>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

fn ones_between(c: &Coloring, a: u64, b: u64, n: u64) -> Result<u64, ForcingError> {
    let mut count = 0;
    for y in 0..n {
        for x in a..b {
            if c.eval(&[x, y])? == 1 {
                count += 1;
                break;
            }
        }
    }
    Ok(count)
}

/// `h(0)` is the least `v > last(q)` with `q⌢v ∈ ℙ′`; then for `n < L`,
/// `r_n` is the first proper extension of `q_n = q⌢h(n)` in the set
/// (length-lex, inside its box) and `h(n+1) = max(r_n)`.
pub fn s1density_h(
    q: &Condition,
    spec: &DenseSetSpec,
    c: &Coloring,
    policy: &LargenessPolicy,
    steps: usize,
) -> Result<S1Run, ForcingError> {
    let zeros = ZeroColumns::new(c, policy)?;
    if zeros.failure(q.values(), policy)?.is_some() {
        return Err(ForcingError::NotInPPrime(q.values().to_vec()));
    }
    let n = zeros.horizon();
    let cap = spec.value_cap.min(n);
    let exhausted = |h: Vec<u64>, done: Vec<S1Step>, step: usize, nodes: u64| S1Run {
        h,
        steps: done,
        outcome: Outcome::Exhausted(
            SearchBox::new()
                .with("step", step as u64)
                .with("max_len", spec.max_len as u64)
                .with("value_cap", cap)
                .with("nodes", nodes),
        ),
    };
    let start = q.last().map_or(0, |v| v + 1);
    let first = (start..n).find(|&v| {
        let mut p = q.values().to_vec();
        p.push(v);
        zeros.last_block_ok(&p, policy)
    });
    let Some(h0) = first else {
        return Ok(exhausted(Vec::new(), Vec::new(), 0, 0));
    };
    let nodes = Cell::new(0);
    let mut h = vec![h0];
    let mut done = Vec::with_capacity(steps);
    for step in 0..steps {
        let q_n = q.append(h[step])?;
        let w = Walker { cap, nodes: &nodes };
        let mut r = None;
        let lens = q_n.len() + 1..=spec.max_len.max(q_n.len());
        let walk = w.walk(q_n.values(), lens, &mut |_| true, &mut |p| {
            if spec.contains(p)? {
                r = Some(p.to_vec());
                return Ok(true);
            }
            Ok(false)
        })?;
        let Some(r) = r.filter(|_| walk == Walk::Stopped) else {
            return Ok(exhausted(h, done, step, nodes.get()));
        };
        let failure_block = zeros.failure(&r, policy)?;
        let next = *r.last().expect("proper extension");
        let ones = ones_between(c, h[step], next, n)?;
        done.push(S1Step {
            q_n,
            r_n: Condition::new(r)?,
            r_in_pprime: failure_block.is_none(),
            failure_block,
            ones,
            ones_infinite: policy.counts_as_infinite(ones),
        });
        h.push(next);
    }
    Ok(S1Run {
        h,
        steps: done,
        outcome: Outcome::Verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol(n: u64) -> LargenessPolicy {
        LargenessPolicy::new(n, 4, 0, 4).unwrap()
    }

    #[test]
    fn length_sets_on_zero_coloring() {
        let zero = Coloring::constant(2, 2, 0).unwrap();
        let p = pol(16);
        let run = one_gen_build(&zero, &DenseSetSpec::lengths(4, 16), &Condition::empty(), &p).unwrap();
        assert_eq!(run.g, vec![0, 1, 2, 3]);
        assert!(run.outcome.is_verified());
        assert!(run.dispositions.iter().all(|d| d.kind == DispositionKind::Met));
    }

    #[test]
    fn predicate_sets() {
        let zero = Coloring::constant(2, 2, 0).unwrap();
        let p = pol(16);
        let even = DenseSetSpec::new("even", "eq(mod(last,2),0)", 3, 16).unwrap();
        let never = DenseSetSpec::new("never", "eq(at(0),99)", 3, 16).unwrap();
        let empty_box = DenseSetSpec::new("boxed", "le(3,len)", 2, 16).unwrap();
        let q0 = Condition::new(vec![1]).unwrap();
        let run = one_gen_build(&zero, &[even.clone(), never.clone(), empty_box.clone()], &q0, &p).unwrap();
        assert_eq!(run.dispositions[0].kind, DispositionKind::Met);
        assert_eq!(run.dispositions[0].condition.values(), &[1, 2]);
        assert_eq!(run.dispositions[1].kind, DispositionKind::NoExtension);
        assert_eq!(run.dispositions[2].kind, DispositionKind::NoExtension);
        for (d, s) in run.dispositions.iter().zip([&even, &never, &empty_box]) {
            assert!(recheck(d, s, &zero, &p).unwrap());
        }
    }

    #[test]
    fn walks_around_bad_blocks() {
        // Columns x < 4 are all 1, so no block may start below 4.
        let c = Coloring::parse(2, 2, "lt(x1,4)").unwrap();
        let p = pol(16);
        let run = one_gen_build(&c, &DenseSetSpec::lengths(3, 16), &Condition::empty(), &p).unwrap();
        assert_eq!(run.g, vec![0, 5, 6]);
        assert!(super::super::in_pprime(&run.g, &c, &p).unwrap());
        let bad = Condition::new(vec![0, 2]).unwrap();
        assert!(matches!(
            one_gen_build(&c, &[], &bad, &p),
            Err(ForcingError::NotInPPrime(_))
        ));
    }

    #[test]
    fn s1density_examples() {
        let zero = Coloring::constant(2, 2, 0).unwrap();
        let p = pol(16);
        let u = DenseSetSpec::new("len3", "le(3,len)", 3, 16).unwrap();
        let run = s1density_h(&Condition::new(vec![0]).unwrap(), &u, &zero, &p, 5).unwrap();
        assert_eq!(run.h, vec![1, 2, 3, 4, 5, 6]);
        assert!(run.steps.iter().all(|s| s.r_in_pprime));
        assert!(run.outcome.is_verified());

        let none = DenseSetSpec::new("none", "le(3,len)", 3, 0).unwrap();
        let run = s1density_h(&Condition::new(vec![0]).unwrap(), &none, &zero, &p, 5).unwrap();
        assert!(run.outcome.is_exhausted());
        assert_eq!(run.h, vec![1]);
    }

    #[test]
    fn s1density_reports_failure_blocks() {
        // c(x,y) = 1 off the diagonal band: every two-point block misses many y.
        let c = Coloring::parse(2, 2, "ite(eq(x1,x2),0,1)").unwrap();
        let p = LargenessPolicy::new(12, 2, 0, 12).unwrap();
        let u = DenseSetSpec::new("len3", "le(3,len)", 3, 12).unwrap();
        let run = s1density_h(&Condition::empty(), &u, &c, &p, 3).unwrap();
        assert!(run.h.windows(2).all(|w| w[0] < w[1]));
        let strict = LargenessPolicy::new(12, 2, 0, 2).unwrap();
        let run = s1density_h(&Condition::empty(), &u, &c, &strict, 2).unwrap_or_else(|e| panic!("{e}"));
        for s in &run.steps {
            assert!(!s.r_in_pprime);
            assert!(s.failure_block.unwrap() >= s.q_n.len());
            assert!(s.ones_infinite);
        }
    }
}
