use indec_core::game::{
    defeat_minus, embedding_to_strategy, play, play_line, search_plus_strategy, strategy_to_embedding, MinusStrategy,
    Player, PlusStrategy,
};
use indec_core::lexcore::{compose, Coloring, Grid};
use proptest::prelude::*;

fn mix(salt: u64, prefix: &[u64]) -> u64 {
    prefix
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64 ^ salt, |h, &v| (h ^ v).wrapping_mul(0x1000_0000_01b3))
}

fn legal_strategy(n: usize, d: u64, deltas: Vec<u64>) -> PlusStrategy {
    PlusStrategy::from_rule(n, d, "random", move |p| {
        let a = *p.last()?;
        Some(a + deltas[mix(0, p) as usize % deltas.len()])
    })
}

type Rule = Box<dyn Fn(&[u64]) -> Option<u64> + Send + Sync>;

fn random_minus(n: usize, colors: u64, salt: u64, cap: u64) -> MinusStrategy {
    let rules = (0..colors)
        .map(|d| Box::new(move |p: &[u64]| Some(mix(salt ^ d, p) % cap)) as Rule)
        .collect();
    MinusStrategy::from_rules(n, rules)
}

fn coloring(n: usize, colors: u64, horizon: u64, salt: u64) -> Coloring {
    let size = Grid::new(n, horizon).size().unwrap();
    let values = (0..size as u64).map(|i| mix(salt, &[i]) % colors).collect();
    Coloring::table(n, colors, horizon, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plays_of_legal_strategies_stay_legal(
        n in 1usize..=3,
        deltas in prop::collection::vec(0u64..3, 1..6),
        salt in any::<u64>(),
    ) {
        let c = Coloring::parse(n, 2, &format!("mod(x{n},2)")).unwrap();
        let sigma = legal_strategy(n, 0, deltas);
        let rec = play(&c, &sigma, &random_minus(n, 2, salt, 10)).unwrap();
        prop_assert!(rec.aborted.is_none());
        prop_assert_eq!(rec.rounds.len(), n);
        prop_assert!(rec.rounds.iter().all(|r| r.a <= r.b));
        let b: Vec<u64> = rec.rounds.iter().map(|r| r.b).collect();
        let value = c.eval(&b).unwrap();
        prop_assert_eq!(rec.value, Some(value));
        prop_assert_eq!(rec.winner == Player::Plus, value == 0);
    }

    #[test]
    fn defeat_is_legal_against_every_opening(
        n in 1usize..=4,
        colors in 1u64..=4,
        salt in any::<u64>(),
    ) {
        let c = coloring(n, colors, 12, salt);
        let family = random_minus(n, colors, salt.rotate_left(17), 12);
        let rec = defeat_minus(&c, &family).unwrap();
        prop_assert!(rec.legal_against_all());
        prop_assert_eq!(rec.d_star, c.eval(&rec.b).unwrap());
        // Replaying the loser's own line gives the same play.
        let d = rec.d_star;
        let loser = PlusStrategy::from_rule(n, d, "replay", {
            let b = rec.b.clone();
            move |p| b.get(p.len() - 1).copied()
        });
        let line = &rec.moves[d as usize];
        let replay = play_line(&c, &loser, line).unwrap();
        prop_assert_eq!(replay.value, Some(d));
    }

    #[test]
    fn strategy_embedding_round_trip(
        n in 1usize..=3,
        m in 1u64..=4,
        deltas in prop::collection::vec(0u64..4, 1..8),
    ) {
        let sigma = legal_strategy(n, 1, deltas);
        let u = strategy_to_embedding(&sigma, m).unwrap();
        let back = embedding_to_strategy(&u.embedding, 1).unwrap();
        prop_assert_eq!(back.opening(), 1);
        for (grid_prefix, alphas) in &u.visits {
            prop_assert_eq!(back.reply(grid_prefix).unwrap(), sigma.reply(alphas).unwrap());
        }
    }

    #[test]
    fn winning_strategies_give_constant_compositions(
        n in 1usize..=2,
        colors in 1u64..=2,
        salt in any::<u64>(),
    ) {
        let (v, a) = (6, 4);
        let c = coloring(n, colors, v, salt);
        let verdict = search_plus_strategy(&c, v, a).unwrap();
        prop_assert!(verdict.outcome.is_verified());
        let sigma = verdict.witness.unwrap();
        let d = sigma.opening();
        for moves in Grid::new(n, a).points() {
            let rec = play_line(&c, &sigma, &moves).unwrap();
            prop_assert_eq!(rec.winner, Player::Plus);
        }
        // The largest grid whose unfolding stays inside the solved box.
        let m = (1..=a).rev().find(|&m| strategy_to_embedding(&sigma, m).is_ok()).unwrap();
        let u = strategy_to_embedding(&sigma, m).unwrap();
        let composed = compose(&c, &u.embedding).unwrap();
        prop_assert!(composed.tabulate(m).unwrap().iter().all(|&e| e == d));
    }
}
