use crate::lexcore::{check_embedding, check_growth, Coloring, Grid, LexEmbedding};

use super::{Principle, PrincipleError, PrincipleVerdict, SearchBox};

/// Search for a grid embedding `h: [0,M)^n → [0,B)^n` with `c ∘ h` constant.
///
/// Candidates must be order-preserving and satisfy the growth checks, so the
/// identity is the answer for a constant coloring. Colors are tried in
/// ascending order and for each color the images are chosen by backtracking
/// in lexicographic order, which yields the lex-least admissible embedding.
pub fn lex_indec_search(c: &Coloring, m: u64, b: u64) -> Result<PrincipleVerdict<LexEmbedding>, PrincipleError> {
    if m == 0 {
        return Err(PrincipleError::ZeroGrid);
    }
    c.require_horizon(b)?;
    let n = c.arity();
    let domain = Grid::new(n, m);
    let range = Grid::new(n, b);
    let dsize = domain.size().ok_or(PrincipleError::TooLarge)?;
    let rsize = range.size().ok_or(PrincipleError::TooLarge)?;
    let colors = c.tabulate(b)?;
    let searched = SearchBox::new().with("grid", m).with("budget", b);
    if dsize > rsize {
        return Ok(PrincipleVerdict::exhausted(Principle::Lex, searched));
    }

    let search = Search::new(domain, range);
    for d in 0..c.colors() {
        if let Some(assign) = search.run(|idx| colors[idx] == d) {
            let images = assign.iter().map(|&i| range.point(i)).collect();
            let h = LexEmbedding::from_images(n, m, false, images)?;
            debug_assert!(check_embedding(&h).ok && check_growth(&h).ok);
            return Ok(PrincipleVerdict::verified(Principle::Lex, d, h));
        }
    }
    Ok(PrincipleVerdict::exhausted(Principle::Lex, searched))
}

struct Search {
    /// For each domain index, the domain index whose image it must exceed in
    /// the growth constraints: its predecessor along its own slice.
    slice_pred: Vec<Option<(usize, usize)>>,
    points: Vec<Vec<u64>>,
    rpoints: Vec<Vec<u64>>,
}

impl Search {
    fn new(domain: Grid, range: Grid) -> Search {
        let points: Vec<Vec<u64>> = domain.points().collect();
        let slice_pred = points
            .iter()
            .map(|p| {
                // Slice level i: last non-zero coordinate; points of the
                // form (x1..x_i, 0..0) with x_i > 0 follow (x1..x_i - 1, 0..0).
                let i = p.iter().rposition(|&v| v != 0)?;
                let mut q = p.clone();
                q[i] -= 1;
                Some((domain.index(&q).unwrap(), i + 1))
            })
            .collect();
        let rpoints = range.points().collect();
        Search {
            slice_pred,
            points,
            rpoints,
        }
    }

    fn run(&self, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut assign = Vec::with_capacity(self.points.len());
        if self.extend(&mut assign, &allowed) {
            Some(assign)
        } else {
            None
        }
    }

    fn admissible(&self, assign: &[usize], cand: usize) -> bool {
        let k = assign.len();
        let p = &self.points[k];
        let v = &self.rpoints[cand];
        if v[0] < p[0] {
            return false;
        }
        if let Some((pred, level)) = self.slice_pred[k] {
            let w = &self.rpoints[assign[pred]];
            if v[..level] <= w[..level] {
                return false;
            }
        }
        // Block starts (x1, 0, .., 0) must lift h1 strictly above the whole
        // previous block; images increase, so the previous image carries its max.
        if k > 0 && p[0] > 0 && p[1..].iter().all(|&x| x == 0) {
            let w = &self.rpoints[assign[k - 1]];
            if v[0] <= w[0] {
                return false;
            }
        }
        true
    }

    fn extend(&self, assign: &mut Vec<usize>, allowed: &impl Fn(usize) -> bool) -> bool {
        let k = assign.len();
        let total = self.points.len();
        if k == total {
            return true;
        }
        let rsize = self.rpoints.len();
        let start = assign.last().map_or(0, |&i| i + 1);
        let remaining = total - k;
        if start + remaining > rsize {
            return false;
        }
        for cand in start..=rsize - remaining {
            if !allowed(cand) || !self.admissible(assign, cand) {
                continue;
            }
            assign.push(cand);
            if self.extend(assign, allowed) {
                return true;
            }
            assign.pop();
        }
        false
    }
}
