//! Iterated limits: certified evaluation, limit towers, and the games that
//! compute a limit.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr::{BinOp, Expr, MAX_VARS};
use crate::game::{play_line, PlayRecord, Player, PlusStrategy};
use crate::lexcore::{next_point, Coloring, Grid, LexError, MapBody, NatMap};

use super::injection::describe;
use super::{seqcode, ReductionError};

/// Seeded spot checks of a stability claim beyond its stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LimitSampler {
    pub seed: u64,
    /// Samples per bound variable.
    pub samples: u32,
    /// Samples are drawn from `stage+1 ..= stage+spread`.
    pub spread: u64,
}

impl Default for LimitSampler {
    fn default() -> Self {
        LimitSampler {
            seed: 0x1dec_5eed,
            samples: 3,
            spread: 32,
        }
    }
}

impl LimitSampler {
    /// No sampling at all.
    pub fn trusting() -> Self {
        LimitSampler {
            samples: 0,
            ..LimitSampler::default()
        }
    }

    fn rng(&self, key: &[u64]) -> ChaCha8Rng {
        let mut h = self.seed;
        for &k in key {
            h = (h ^ k).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(29);
        }
        ChaCha8Rng::seed_from_u64(h)
    }
}

fn fits(horizon: Option<u64>, args: &[u64]) -> bool {
    horizon.is_none_or(|h| args.iter().all(|&a| a < h))
}

/// `lim_{z_1} .. lim_{z_m} c(prefix, z_1, .., z_m)` read off the certificate
/// stages, then spot-checked: for each bound variable, innermost first, a
/// few later stages must give the same value.
pub fn limit_reduce(c: &Coloring, prefix: &[u64], sampler: &LimitSampler) -> Result<u64, ReductionError> {
    let cert = c.certificate().ok_or(ReductionError::MissingCertificate)?;
    if prefix.len() != cert.free {
        return Err(ReductionError::Arity {
            expected: cert.free,
            got: prefix.len(),
        });
    }
    let args = cert.complete(prefix)?;
    let value = c.eval(&args)?;
    if sampler.samples == 0 || sampler.spread == 0 {
        return Ok(value);
    }
    let horizon = c.horizon();
    let mut rng = sampler.rng(prefix);
    for j in (cert.free..args.len()).rev() {
        for _ in 0..sampler.samples {
            let z = args[j].saturating_add(rng.gen_range(1..=sampler.spread));
            let mut moved = args[..j].to_vec();
            moved.push(z);
            let full = cert.complete(&moved)?;
            if !fits(horizon, &full) {
                continue;
            }
            let got = c.eval(&full)?;
            if got != value {
                return Err(ReductionError::CertificateViolation {
                    args: full,
                    expected: value,
                    got,
                });
            }
        }
    }
    Ok(value)
}

/// Maps `f^(0), .., f^(n)` of arities `1, .., 1+n` with moduli:
/// `f^(i-1)(x, ȳ) = f^(i)(x, ȳ, z)` for `z >= moduli[i-1](x, ȳ)`.
#[derive(Clone, Debug)]
pub struct LimitTower {
    levels: Vec<NatMap>,
    moduli: Vec<NatMap>,
}

impl LimitTower {
    pub fn new(levels: Vec<NatMap>, moduli: Vec<NatMap>) -> Result<LimitTower, ReductionError> {
        if levels.len() < 2 || moduli.len() + 1 != levels.len() {
            return Err(ReductionError::Premise(format!(
                "a tower needs n+1 >= 2 levels and n moduli, got {} and {}",
                levels.len(),
                moduli.len()
            )));
        }
        for (i, f) in levels.iter().enumerate() {
            if f.arity() != 1 + i {
                return Err(ReductionError::Arity { expected: 1 + i, got: f.arity() });
            }
        }
        for (i, m) in moduli.iter().enumerate() {
            if m.arity() != 1 + i {
                return Err(ReductionError::Arity { expected: 1 + i, got: m.arity() });
            }
        }
        Ok(LimitTower { levels, moduli })
    }

    /// Lower levels computed from the top by evaluating at the moduli.
    pub fn from_top(top: NatMap, moduli: Vec<NatMap>) -> Result<LimitTower, ReductionError> {
        let n = moduli.len();
        if top.arity() != 1 + n || n == 0 {
            return Err(ReductionError::Arity { expected: 1 + n, got: top.arity() });
        }
        let mut levels = vec![top];
        for i in (0..n).rev() {
            let upper = levels.last().expect("nonempty").clone();
            let m = moduli[i].clone();
            let name = format!("lim({})", describe(&upper));
            levels.push(NatMap::native(1 + i, name, move |a| {
                let mut args = a.to_vec();
                args.push(m.eval(a)?);
                upper.eval(&args)
            }));
        }
        levels.reverse();
        LimitTower::new(levels, moduli)
    }

    /// `n`: the top level has arity `1 + n`.
    pub fn depth(&self) -> usize {
        self.moduli.len()
    }

    pub fn level(&self, i: usize) -> &NatMap {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[NatMap] {
        &self.levels
    }

    /// Modulus for the `i`-th bound variable, `1 <= i <= n`.
    pub fn modulus(&self, i: usize) -> &NatMap {
        &self.moduli[i - 1]
    }

    pub fn moduli(&self) -> &[NatMap] {
        &self.moduli
    }

    pub fn top(&self) -> &NatMap {
        &self.levels[self.depth()]
    }

    pub fn base(&self) -> &NatMap {
        &self.levels[0]
    }

    /// Check every link on arguments below `bound`: at the modulus stage and
    /// at sampled later stages.
    pub fn verify(&self, bound: u64, sampler: &LimitSampler) -> Result<(), ReductionError> {
        for i in 1..=self.depth() {
            let g = Grid::new(i, bound);
            g.size().ok_or(ReductionError::TooLarge)?;
            if bound == 0 {
                break;
            }
            let mut args = vec![0u64; i];
            loop {
                let expected = self.levels[i - 1].eval(&args)?;
                let stage = self.moduli[i - 1].eval(&args)?;
                let mut rng = sampler.rng(&args);
                let extra = (0..sampler.samples).map(|_| stage.saturating_add(rng.gen_range(1..=sampler.spread.max(1))));
                for z in std::iter::once(stage).chain(extra) {
                    let mut full = args.clone();
                    full.push(z);
                    let got = self.levels[i].eval(&full)?;
                    if got != expected {
                        return Err(ReductionError::CertificateViolation { args: full, expected, got });
                    }
                }
                if !next_point(&mut args, bound) {
                    break;
                }
            }
        }
        Ok(())
    }
}

/// `c(x, ȳ, z̄) = 1` iff `f(x, ȳ) = f(x, z̄)`, for `f` of arity `1 + n`.
pub fn limgame_coloring(f: &NatMap) -> Result<Coloring, ReductionError> {
    if f.arity() < 2 {
        return Err(ReductionError::Arity { expected: 2, got: f.arity() });
    }
    let n = f.arity() - 1;
    let arity = 1 + 2 * n;
    if let MapBody::Expr(e) = f.body() {
        if arity <= MAX_VARS {
            let left: Vec<Expr> = (0..=n).map(Expr::Var).collect();
            let right: Vec<Expr> = std::iter::once(Expr::Var(0)).chain((n + 1..arity).map(Expr::Var)).collect();
            let body = Expr::bin(BinOp::Eq, e.substitute(&left), e.substitute(&right));
            return Ok(Coloring::new(NatMap::expr(arity, body)?, 2)?);
        }
    }
    let g = f.clone();
    Ok(Coloring::native(arity, 2, format!("limgame({})", describe(f)), move |a| {
        let mut right = vec![a[0]];
        right.extend_from_slice(&a[n + 1..]);
        Ok(u64::from(g.eval(&a[..=n])? == g.eval(&right)?))
    })?)
}

/// `f̄(x, z̄) = code(⟨f(0,z̄), .., f(x,z̄)⟩)` with the code of [`seqcode`].
pub fn tuple_coloring(f: &NatMap) -> NatMap {
    let g = f.clone();
    NatMap::native(f.arity(), format!("tuple({})", describe(f)), move |a| {
        let mut args = a.to_vec();
        let mut vals = Vec::with_capacity(a[0] as usize + 1);
        for u in 0..=a[0] {
            args[0] = u;
            vals.push(g.eval(&args)?);
        }
        seqcode::encode(&vals).map_err(|e| LexError::Overflow(e.to_string()))
    })
}

/// ⊕'s strategy in the game for `limgame_coloring(tower.top())`: open with
/// color 1, copy `x`, then answer each `y_i` and `z_i` round with
/// `max(a, μ_i(x, earlier replies in the same block))`, so both blocks land
/// past every modulus and evaluate to `f^(0)(x)`.
pub fn gamelim_strategy(tower: &LimitTower) -> PlusStrategy {
    let n = tower.depth();
    let moduli: Arc<Vec<NatMap>> = Arc::new(tower.moduli().to_vec());
    PlusStrategy::from_rule(1 + 2 * n, 1, "gamelim", move |p| {
        let x = p[0];
        let mut block = vec![x];
        let mut last = x;
        for (r, &a) in p.iter().enumerate().skip(1) {
            if r == n + 1 {
                block.truncate(1);
            }
            let i = block.len() - 1;
            let stage = moduli[i].eval(&block).ok()?;
            last = a.max(stage);
            block.push(last);
        }
        Some(last)
    })
}

/// Play `sigma` against every ⊖-line in `[0,box)^{1+2n}`; the first lost
/// play is reported.
pub fn gamelim_verify(tower: &LimitTower, sigma: &PlusStrategy, box_: u64) -> Result<(), ReductionError> {
    let c = limgame_coloring(tower.top())?;
    let n = c.arity();
    Grid::new(n, box_).size().ok_or(ReductionError::TooLarge)?;
    if box_ == 0 {
        return Ok(());
    }
    let mut moves = vec![0u64; n];
    loop {
        let rec: PlayRecord = play_line(&c, sigma, &moves)?;
        if rec.winner != Player::Plus {
            return Err(ReductionError::ModulusViolation {
                moves,
                replies: rec.rounds.iter().map(|r| r.b).collect(),
            });
        }
        if !next_point(&mut moves, box_) {
            return Ok(());
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    /// Stability of `f` was checked (for instance through a tower).
    Certified,
    /// Stability of `f` is taken on trust.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlimEntry {
    /// Least `w < box` with `σ(w) = x`.
    pub w: u64,
    /// `y_i = σ(w, 0^i)`.
    pub ys: Vec<u64>,
    /// `f_∞(x) = f(x, ȳ)`.
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flim {
    pub entries: BTreeMap<u64, FlimEntry>,
    pub stability: Stability,
}

impl Flim {
    /// `H = {σ(w) : w < box}`, increasing.
    pub fn h(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    pub fn f_inf(&self, x: u64) -> Option<u64> {
        self.entries.get(&x).map(|e| e.value)
    }
}

/// Read `H` and `f_∞` off a ⊕-strategy for the game of `limgame_coloring(f)`.
pub fn extract_flim(sigma: &PlusStrategy, f: &NatMap, box_: u64, stability: Stability) -> Result<Flim, ReductionError> {
    if sigma.opening() != 1 {
        return Err(ReductionError::WrongOpening(sigma.opening()));
    }
    if f.arity() < 2 {
        return Err(ReductionError::Arity { expected: 2, got: f.arity() });
    }
    let n = f.arity() - 1;
    if sigma.arity() != 1 + 2 * n {
        return Err(ReductionError::Arity {
            expected: 1 + 2 * n,
            got: sigma.arity(),
        });
    }
    if box_ == 0 {
        return Err(ReductionError::Premise("box must be positive".into()));
    }
    let mut entries = BTreeMap::new();
    for w in 0..box_ {
        let x = sigma.reply(&[w])?;
        if entries.contains_key(&x) {
            continue;
        }
        let mut prefix = vec![w];
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            prefix.push(0);
            ys.push(sigma.reply(&prefix)?);
        }
        let mut args = vec![x];
        args.extend_from_slice(&ys);
        let value = f.eval(&args)?;
        entries.insert(x, FlimEntry { w, ys, value });
    }
    Ok(Flim { entries, stability })
}
