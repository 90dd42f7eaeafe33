use serde::Serialize;

use crate::lexcore::{Coloring, Grid, LargenessPolicy};
use crate::reductions::{limit_reduce, LimitSampler};

use super::{PrincipleError, MAX_COLORS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElemWitness {
    pub color: u64,
    /// Frontier semantics: a tuple with every coordinate `>= frontier`.
    /// Exact semantics: the number of `x1 < horizon` whose iterated limit is `color`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElemReport {
    /// Witnessing colors, ascending.
    pub colors: Vec<u64>,
    /// True when decided through the stability certificate.
    pub exact: bool,
    pub witnesses: Vec<ElemWitness>,
}

/// Colors `d` for which the nested `∃^∞` statement holds under `policy`.
///
/// Without a certificate this uses frontier semantics (one tuple in
/// `[F, N)^n` of color `d`); with one, the iterated limit `g(x1)` is computed
/// for every `x1 < N` and `d` qualifies when it occurs at least `t` times.
pub fn elem_indec_check(c: &Coloring, policy: &LargenessPolicy) -> Result<ElemReport, PrincipleError> {
    policy.validate()?;
    c.require_horizon(policy.horizon)?;
    let k = c.colors();
    if k > MAX_COLORS {
        return Err(PrincipleError::TooManyColors(k));
    }
    let k_slots = k as usize;

    if let Some(cert) = c.certificate() {
        if cert.free != 1 {
            return Err(PrincipleError::Premise(format!(
                "certificate leaves {} free variables, expected 1",
                cert.free
            )));
        }
        let sampler = LimitSampler::default();
        let mut counts = vec![0u64; k_slots];
        for x1 in 0..policy.horizon {
            let g = limit_reduce(c, &[x1], &sampler)?;
            if let Some(slot) = counts.get_mut(g as usize) {
                *slot += 1;
            }
        }
        let witnesses: Vec<ElemWitness> = counts
            .iter()
            .enumerate()
            .filter(|&(_, &n)| policy.counts_as_infinite(n) && n > 0)
            .map(|(d, &n)| ElemWitness {
                color: d as u64,
                tuple: None,
                count: Some(n),
            })
            .collect();
        return Ok(ElemReport {
            colors: witnesses.iter().map(|w| w.color).collect(),
            exact: true,
            witnesses,
        });
    }

    let n = c.arity();
    let span = policy.horizon - policy.frontier;
    let sub = Grid::new(n, span);
    let mut found: Vec<Option<Vec<u64>>> = vec![None; k_slots];
    let mut remaining = found.len();
    let mut p = vec![0u64; n];
    if span > 0 {
        loop {
            let point: Vec<u64> = p.iter().map(|v| v + policy.frontier).collect();
            let d = c.eval(&point)? as usize;
            if found[d].is_none() {
                found[d] = Some(point);
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            if !crate::lexcore::next_point(&mut p, sub.extent) {
                break;
            }
        }
    }
    let witnesses: Vec<ElemWitness> = found
        .into_iter()
        .enumerate()
        .filter_map(|(d, t)| {
            t.map(|t| ElemWitness {
                color: d as u64,
                tuple: Some(t),
                count: None,
            })
        })
        .collect();
    Ok(ElemReport {
        colors: witnesses.iter().map(|w| w.color).collect(),
        exact: false,
        witnesses,
    })
}

/// The report for each frontier in `frontiers`, to expose how the answer
/// depends on the choice of frontier.
pub fn elem_frontier_sweep(
    c: &Coloring,
    policy: &LargenessPolicy,
    frontiers: impl IntoIterator<Item = u64>,
) -> Result<Vec<(u64, ElemReport)>, PrincipleError> {
    frontiers
        .into_iter()
        .map(|f| {
            let p = LargenessPolicy { frontier: f, ..*policy };
            elem_indec_check(c, &p).map(|r| (f, r))
        })
        .collect()
}
