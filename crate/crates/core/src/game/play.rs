use serde::Serialize;

use crate::lexcore::Coloring;

use super::{GameError, MinusStrategy, PlusStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    /// ⊕ picks the color.
    Open,
    Minus,
    Plus,
    Over,
}

/// A single play of `G_n(c)` in progress.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    arity: usize,
    colors: u64,
    d: Option<u64>,
    rounds: Vec<Round>,
    pending: Option<u64>,
}

impl GameState {
    pub fn new(arity: usize, colors: u64) -> GameState {
        GameState {
            arity,
            colors,
            d: None,
            rounds: Vec::with_capacity(arity),
            pending: None,
        }
    }

    pub fn turn(&self) -> Turn {
        if self.d.is_none() {
            Turn::Open
        } else if self.rounds.len() == self.arity {
            Turn::Over
        } else if self.pending.is_some() {
            Turn::Plus
        } else {
            Turn::Minus
        }
    }

    pub fn color(&self) -> Option<u64> {
        self.d
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    /// ⊖-moves so far, including a pending one.
    pub fn a_prefix(&self) -> Vec<u64> {
        self.rounds.iter().map(|r| r.a).chain(self.pending).collect()
    }

    pub fn b_prefix(&self) -> Vec<u64> {
        self.rounds.iter().map(|r| r.b).collect()
    }

    pub fn open(&mut self, d: u64) -> Result<(), GameError> {
        if self.turn() != Turn::Open {
            return Err(GameError::OutOfTurn);
        }
        if d >= self.colors {
            return Err(GameError::ColorOutOfRange { d, colors: self.colors });
        }
        self.d = Some(d);
        Ok(())
    }

    pub fn minus_move(&mut self, a: u64) -> Result<(), GameError> {
        if self.turn() != Turn::Minus {
            return Err(GameError::OutOfTurn);
        }
        self.pending = Some(a);
        Ok(())
    }

    /// Fails with [`GameError::IllegalReply`] when `b < a_i`; the state is
    /// left unchanged so the caller decides between re-prompting and aborting.
    pub fn plus_reply(&mut self, b: u64) -> Result<(), GameError> {
        let Some(a) = self.pending else {
            return Err(GameError::OutOfTurn);
        };
        if b < a {
            return Err(GameError::IllegalReply {
                prefix: self.a_prefix(),
                reply: b,
            });
        }
        self.pending = None;
        self.rounds.push(Round { a, b });
        Ok(())
    }

    /// Winner and `c(b̄)` once all rounds are played.
    pub fn result(&self, c: &Coloring) -> Result<(Player, u64), GameError> {
        if self.turn() != Turn::Over {
            return Err(GameError::OutOfTurn);
        }
        let value = c.eval(&self.b_prefix())?;
        let winner = if Some(value) == self.d { Player::Plus } else { Player::Minus };
        Ok((winner, value))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayRecord {
    pub d: u64,
    pub rounds: Vec<Round>,
    pub winner: Player,
    /// `c(b̄)` for a completed play.
    pub value: Option<u64>,
    /// Illegal reply that ended the play: round number (1-based), `a`, `b`.
    pub aborted: Option<(usize, u64, u64)>,
}

/// Play `plus` against `minus`. An illegal ⊕ reply ends the play as a loss
/// for ⊕.
pub fn play(c: &Coloring, plus: &PlusStrategy, minus: &MinusStrategy) -> Result<PlayRecord, GameError> {
    let n = c.arity();
    if plus.arity() != n || minus.arity() != n {
        return Err(GameError::Arity {
            expected: n,
            got: if plus.arity() != n { plus.arity() } else { minus.arity() },
        });
    }
    let mut st = GameState::new(n, c.colors());
    let d = plus.opening();
    st.open(d)?;
    while st.turn() == Turn::Minus {
        let a = minus.next_move(d, &st.b_prefix())?;
        st.minus_move(a)?;
        let prefix = st.a_prefix();
        let b = plus
            .raw_reply(&prefix)
            .ok_or_else(|| GameError::Undefined { prefix: prefix.clone() })?;
        if let Err(GameError::IllegalReply { .. }) = st.plus_reply(b) {
            return Ok(PlayRecord {
                d,
                rounds: st.rounds().to_vec(),
                winner: Player::Minus,
                value: None,
                aborted: Some((st.rounds().len() + 1, a, b)),
            });
        }
    }
    let (winner, value) = st.result(c)?;
    Ok(PlayRecord {
        d,
        rounds: st.rounds().to_vec(),
        winner,
        value: Some(value),
        aborted: None,
    })
}

/// Play `plus` against a fixed sequence of ⊖-moves.
pub fn play_line(c: &Coloring, plus: &PlusStrategy, moves: &[u64]) -> Result<PlayRecord, GameError> {
    let n = c.arity();
    if moves.len() != n {
        return Err(GameError::Arity { expected: n, got: moves.len() });
    }
    let line = moves.to_vec();
    let minus = MinusStrategy::from_rules(
        n,
        (0..c.colors())
            .map(|_| {
                let line = line.clone();
                Box::new(move |p: &[u64]| line.get(p.len()).copied()) as Box<dyn Fn(&[u64]) -> Option<u64> + Send + Sync>
            })
            .collect(),
    );
    play(c, plus, &minus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefeatRecord {
    /// ⊕'s replies `b_m = max_d σ_d(b_1..b_{m-1})`.
    pub b: Vec<u64>,
    /// `c(b̄)`: the strategy `σ_{d*}` loses this play.
    pub d_star: u64,
    /// ⊖'s moves under each `σ_d` along `b̄`.
    pub moves: Vec<Vec<u64>>,
}

impl DefeatRecord {
    /// `b_m >= σ_d(b_1..b_{m-1})` for every `d` and `m`.
    pub fn legal_against_all(&self) -> bool {
        self.moves
            .iter()
            .all(|a| a.iter().zip(&self.b).all(|(a, b)| a <= b))
    }
}

/// Answer every `σ_d` at once by replying with the largest of their moves.
pub fn defeat_minus(c: &Coloring, family: &MinusStrategy) -> Result<DefeatRecord, GameError> {
    let n = c.arity();
    let k = c.colors();
    if family.colors() as u64 != k {
        return Err(GameError::Premise(format!(
            "family has {} strategies for {k} colors",
            family.colors()
        )));
    }
    let mut b = Vec::with_capacity(n);
    let mut moves = vec![Vec::with_capacity(n); k as usize];
    for _ in 0..n {
        let mut best = 0;
        for d in 0..k {
            let a = family.next_move(d, &b)?;
            moves[d as usize].push(a);
            best = best.max(a);
        }
        b.push(best);
    }
    let d_star = c.eval(&b)?;
    Ok(DefeatRecord { b, d_star, moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn constant_minus(n: usize, k: u64, vals: &[u64]) -> MinusStrategy {
        MinusStrategy::from_rules(
            n,
            (0..k as usize)
                .map(|d| {
                    let v = vals[d];
                    Box::new(move |_: &[u64]| Some(v)) as Box<dyn Fn(&[u64]) -> Option<u64> + Send + Sync>
                })
                .collect(),
        )
    }

    #[test]
    fn constant_coloring_plus_wins() {
        let c = Coloring::constant(2, 1, 0).unwrap();
        let r = play(&c, &PlusStrategy::minimal(2, 0), &constant_minus(2, 1, &[7])).unwrap();
        assert_eq!(r.winner, Player::Plus);
        assert_eq!(r.rounds, vec![Round { a: 7, b: 7 }, Round { a: 7, b: 7 }]);
    }

    #[test]
    fn parity_reply_wins_everything() {
        let c = Coloring::parse(1, 2, "mod(x1,2)").unwrap();
        let plus = PlusStrategy::from_rule(1, 1, "odd", |p| Some(if p[0] % 2 == 1 { p[0] } else { p[0] + 1 }));
        for a in 0..20 {
            assert_eq!(play_line(&c, &plus, &[a]).unwrap().winner, Player::Plus);
        }
    }

    #[test]
    fn illegal_reply_aborts() {
        let c = Coloring::constant(1, 2, 0).unwrap();
        let plus = PlusStrategy::from_rule(1, 0, "pred", |p| Some(p[0].saturating_sub(1)));
        let r = play_line(&c, &plus, &[3]).unwrap();
        assert_eq!(r.winner, Player::Minus);
        assert_eq!(r.aborted, Some((1, 3, 2)));
        assert!(r.rounds.is_empty());
    }

    #[test]
    fn defeat_examples() {
        let c = Coloring::parse(1, 2, "mod(x1,2)").unwrap();
        let r = defeat_minus(&c, &constant_minus(1, 2, &[3, 5])).unwrap();
        assert_eq!(r.b, vec![5]);
        assert!(r.legal_against_all());
        assert_eq!(r.d_star, 1);

        let c = Coloring::parse(2, 3, "mod(add(x1,x2),3)").unwrap();
        let r = defeat_minus(&c, &constant_minus(2, 3, &[0, 0, 0])).unwrap();
        assert_eq!((r.b.clone(), r.d_star), (vec![0, 0], 0));

        let c = Coloring::constant(2, 1, 0).unwrap();
        let r = defeat_minus(&c, &constant_minus(2, 1, &[2])).unwrap();
        assert_eq!(r.d_star, 0);
    }

    #[test]
    fn state_machine_guards() {
        let mut st = GameState::new(1, 2);
        assert!(st.minus_move(0).is_err());
        assert!(st.open(2).is_err());
        st.open(1).unwrap();
        st.minus_move(4).unwrap();
        assert!(matches!(st.plus_reply(3), Err(GameError::IllegalReply { .. })));
        st.plus_reply(5).unwrap();
        let c = Coloring::parse(1, 2, "mod(x1,2)").unwrap();
        assert_eq!(st.result(&c).unwrap(), (Player::Plus, 1));
    }

    #[test]
    fn tabled_minus_strategy() {
        let mut t0 = BTreeMap::new();
        t0.insert(vec![], 1);
        t0.insert(vec![1], 2);
        let minus = MinusStrategy::from_tables(2, vec![t0]).unwrap();
        let c = Coloring::parse(2, 1, "0").unwrap();
        let r = play(&c, &PlusStrategy::minimal(2, 0), &minus).unwrap();
        assert_eq!(r.rounds, vec![Round { a: 1, b: 1 }, Round { a: 2, b: 2 }]);
    }
}
