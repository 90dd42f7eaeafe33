use std::collections::{BTreeMap, HashMap};

use crate::lexcore::{check_embedding, Grid, LexEmbedding};

use super::{GameError, PlusStrategy};

/// A strong embedding unfolded from a strategy, with the ⊖-prefix the
/// recursion fed to `σ` for each grid prefix.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub embedding: LexEmbedding,
    /// Grid prefix `(a_1..a_i)` ↦ ⊖-prefix `(α_1, .., α_i)` that was played.
    pub visits: BTreeMap<Vec<u64>, Vec<u64>>,
}

/// Unfold `σ` into a strong embedding of `[0,M)^n`.
///
/// Along each slice ⊖ opens with 0 and then plays one more than ⊕'s previous
/// reply:
///
/// ```text
/// α_i(..., 0)   = 0
/// α_i(..., a+1) = h_i(..., a) + 1
/// h_i(a_1..a_i) = σ(α_1(a_1), .., α_i(a_1..a_i))
/// ```
///
/// so `h_i` is strictly increasing in `a_i` and every visited play is a play
/// of `σ`; if `σ` wins, `c ∘ h` is constant.
pub fn strategy_to_embedding(plus: &PlusStrategy, m: u64) -> Result<Unfolding, GameError> {
    let n = plus.arity();
    let domain = Grid::new(n, m);
    domain.size().ok_or(GameError::TooLarge)?;
    // Grid prefix -> (⊖-prefix, h_1..h_i)
    let mut level: HashMap<Vec<u64>, (Vec<u64>, Vec<u64>)> = HashMap::new();
    level.insert(Vec::new(), (Vec::new(), Vec::new()));
    let mut visits = BTreeMap::new();
    for i in 1..=n {
        let mut next = HashMap::new();
        for prefix in Grid::new(i - 1, m).points() {
            let (alphas, hs) = level[&prefix].clone();
            let mut alpha = 0u64;
            for a in 0..m {
                let mut played = alphas.clone();
                played.push(alpha);
                let b = plus.reply(&played)?;
                let mut gp = prefix.clone();
                gp.push(a);
                let mut hv = hs.clone();
                hv.push(b);
                visits.insert(gp.clone(), played.clone());
                next.insert(gp, (played, hv));
                alpha = b.checked_add(1).ok_or(GameError::TooLarge)?;
            }
        }
        level = next;
    }
    let images = domain.points().map(|p| level[&p].1.clone()).collect();
    let embedding = LexEmbedding::from_images(n, m, true, images)?;
    Ok(Unfolding { embedding, visits })
}

/// `σ(a_1..a_i) = h_i(a_1..a_i, 0, .., 0)` on every grid prefix.
pub fn embedding_to_strategy(h: &LexEmbedding, d: u64) -> Result<PlusStrategy, GameError> {
    if !h.strong() {
        return Err(GameError::NotStrong);
    }
    let report = check_embedding(h);
    if report.strong_violation.is_some() {
        return Err(GameError::NotStrong);
    }
    let n = h.arity();
    let m = h.grid();
    let mut table = BTreeMap::new();
    for i in 1..=n {
        for prefix in Grid::new(i, m).points() {
            let mut full = prefix.clone();
            full.resize(n, 0);
            let b = h.image(&full).expect("inside grid")[i - 1];
            table.insert(prefix, b);
        }
    }
    PlusStrategy::from_table(n, d, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexcore::check_growth;

    #[test]
    fn minimal_strategy_unfolds_to_identity() {
        let u = strategy_to_embedding(&PlusStrategy::minimal(2, 0), 3).unwrap();
        assert_eq!(u.embedding, LexEmbedding::identity(2, 3));
    }

    #[test]
    fn doubling_first_reply() {
        let s = PlusStrategy::from_rule(2, 0, "double", |p| Some(if p.len() == 1 { 2 * p[0] } else { p[1] }));
        let u = strategy_to_embedding(&s, 4).unwrap();
        let h1: Vec<u64> = (0..4).map(|a| u.embedding.image(&[a, 0]).unwrap()[0]).collect();
        assert_eq!(h1, vec![0, 2, 6, 14]);
        assert!(check_embedding(&u.embedding).ok);
        assert!(check_growth(&u.embedding).ok);
    }

    #[test]
    fn shifted_reply_gives_progression() {
        let s = PlusStrategy::from_rule(1, 0, "shift", |p| Some(p[0] + 1));
        let u = strategy_to_embedding(&s, 5).unwrap();
        let h1: Vec<u64> = (0..5).map(|a| u.embedding.image(&[a]).unwrap()[0]).collect();
        assert_eq!(h1, vec![1, 3, 5, 7, 9]);
        assert_eq!(u.visits[&vec![2]], vec![4]);
    }

    #[test]
    fn embedding_to_strategy_examples() {
        let s = embedding_to_strategy(&LexEmbedding::identity(2, 3), 0).unwrap();
        assert!(s.table().unwrap().iter().all(|(p, &b)| b == *p.last().unwrap()));
        let h = LexEmbedding::from_fn(2, 3, true, |p| vec![p[0], p[0] + p[1]]).unwrap();
        let s = embedding_to_strategy(&h, 0).unwrap();
        assert_eq!(s.reply(&[2]).unwrap(), 2);
        assert_eq!(s.reply(&[2, 1]).unwrap(), 3);
        assert!(matches!(
            embedding_to_strategy(&h.clone().with_strong(false), 0),
            Err(GameError::NotStrong)
        ));
    }

    #[test]
    fn illegal_readoff_is_rejected() {
        let h = LexEmbedding::from_fn(1, 3, true, |p| vec![p[0].saturating_sub(1) * 3]).unwrap();
        assert!(matches!(embedding_to_strategy(&h, 0), Err(GameError::IllegalReply { .. })));
    }

    #[test]
    fn round_trip_agrees_on_visits() {
        let s = PlusStrategy::from_rule(2, 0, "mix", |p| Some(p[p.len() - 1] + (p[0] % 2)));
        let u = strategy_to_embedding(&s, 4).unwrap();
        let back = embedding_to_strategy(&u.embedding, 0).unwrap();
        for (gp, played) in &u.visits {
            assert_eq!(back.reply(gp).unwrap(), s.reply(played).unwrap());
        }
    }
}
