use std::collections::BTreeMap;

use crate::lexcore::{Coloring, Grid};
use crate::principles::{Principle, PrincipleVerdict, SearchBox};

use super::{GameError, PlusStrategy};

/// Winning ⊕-positions of the bounded game for one color.
///
/// `win[i]` is indexed row-major by ⊕'s replies `(b_1..b_i) ∈ [0,V)^i`.
struct Solved {
    v: u64,
    win: Vec<Vec<bool>>,
}

impl Solved {
    fn new(colors: &[u64], n: usize, v: u64, a_bound: u64, d: u64) -> Solved {
        let vu = v as usize;
        let mut win: Vec<Vec<bool>> = vec![Vec::new(); n + 1];
        win[n] = colors.iter().map(|&c| c == d).collect();
        for i in (0..n).rev() {
            let size = vu.pow(i as u32);
            let child = &win[i + 1];
            let mut here = vec![false; size];
            for (idx, slot) in here.iter_mut().enumerate() {
                let base = idx * vu;
                // Winning iff every a < A has some winning b in [a, V): the
                // binding case is the largest a, so look for a win at >= A-1.
                let lowest_needed = a_bound.saturating_sub(1) as usize;
                *slot = a_bound == 0 || (lowest_needed..vu).any(|b| child[base + b]);
            }
            win[i] = here;
        }
        Solved { v, win }
    }

    fn root_wins(&self) -> bool {
        self.win[0][0]
    }

    fn least_reply(&self, b_prefix: &[u64], a: u64) -> Option<u64> {
        let i = b_prefix.len();
        let vu = self.v as usize;
        let mut base = 0usize;
        for &b in b_prefix {
            base = base * vu + b as usize;
        }
        base *= vu;
        (a..self.v).find(|&b| self.win[i + 1][base + b as usize])
    }
}

/// Solve `G_n(c)` with ⊖ moving in `[0,A)` and ⊕ replying in `[a_i, V)`.
///
/// Colors are tried in ascending order; the returned table answers every
/// ⊖-prefix in `[0,A)^i` with the least winning reply, which is the lex-least
/// winning table in prefix order. Exhausted only means no winner within the
/// bounds.
pub fn search_plus_strategy(c: &Coloring, v: u64, a_bound: u64) -> Result<PrincipleVerdict<PlusStrategy>, GameError> {
    if v == 0 {
        return Err(GameError::ZeroBound);
    }
    c.require_horizon(v)?;
    let n = c.arity();
    Grid::new(n, v).size().ok_or(GameError::TooLarge)?;
    Grid::new(n, a_bound).size().ok_or(GameError::TooLarge)?;
    let colors = c.tabulate(v)?;
    for d in 0..c.colors() {
        let solved = Solved::new(&colors, n, v, a_bound, d);
        if !solved.root_wins() {
            continue;
        }
        let mut table = BTreeMap::new();
        extract(&solved, n, a_bound, &mut Vec::new(), &mut Vec::new(), &mut table);
        let s = PlusStrategy::from_table(n, d, table)?;
        return Ok(PrincipleVerdict::verified(Principle::Game, d, s));
    }
    Ok(PrincipleVerdict::exhausted(
        Principle::Game,
        SearchBox::new().with("moves", v).with("opponent", a_bound),
    ))
}

fn extract(
    solved: &Solved,
    n: usize,
    a_bound: u64,
    a_prefix: &mut Vec<u64>,
    b_prefix: &mut Vec<u64>,
    table: &mut BTreeMap<Vec<u64>, u64>,
) {
    if b_prefix.len() == n {
        return;
    }
    for a in 0..a_bound {
        let b = solved
            .least_reply(b_prefix, a)
            .expect("winning position has a winning reply");
        a_prefix.push(a);
        b_prefix.push(b);
        table.insert(a_prefix.clone(), b);
        extract(solved, n, a_bound, a_prefix, b_prefix, table);
        a_prefix.pop();
        b_prefix.pop();
    }
}
