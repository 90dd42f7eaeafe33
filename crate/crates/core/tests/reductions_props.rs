use std::collections::BTreeSet;

use indec_core::lexcore::{compose, Coloring, LargenessPolicy, NatMap, StabilityCertificate};
use indec_core::principles::hwrt_check;
use indec_core::reductions::seqcode::decode;
use indec_core::reductions::{
    aca_coloring, build_zero_embedding, extract_flim, gamelim_strategy, gamelim_verify, hwrt_normalize,
    limgame_coloring, limit_reduce, range_coloring, range_decide, tuple_coloring, Injection, LimitSampler,
    LimitTower, RangeDecision, Stability,
};
use proptest::prelude::*;

fn mix(salt: u64, args: &[u64]) -> u64 {
    args.iter()
        .fold(0xcbf2_9ce4_8422_2325u64 ^ salt, |h, &v| (h ^ v).wrapping_mul(0x1000_0000_01b3))
}

/// An injection that is increasing except on a shuffled prefix.
fn injection() -> impl Strategy<Value = Vec<u64>> {
    (prop::collection::vec(1u64..4, 40), 0usize..10).prop_flat_map(|(gaps, p)| {
        let mut acc = 0;
        let values: Vec<u64> = gaps
            .iter()
            .map(|g| {
                acc += g;
                acc - 1
            })
            .collect();
        let head = values[..p].to_vec();
        let tail = values[p..].to_vec();
        Just(head).prop_shuffle().prop_map(move |mut h| {
            h.extend_from_slice(&tail);
            h
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn range_coloring_is_pointwise(values in injection(), x in 0u64..60, y in 0u64..=40) {
        let c = range_coloring(&Injection::from_values(values.clone()).unwrap());
        let expected = u64::from(values[..y as usize].contains(&x));
        prop_assert_eq!(c.eval(&[x, y]).unwrap(), expected);
    }

    #[test]
    fn aca_coloring_is_pointwise(values in injection(), x in 0u64..60, y in 0u64..40, z in 0u64..40) {
        let c = aca_coloring(&Injection::from_values(values.clone()).unwrap());
        let below = |s: u64| -> BTreeSet<u64> { values[..=s as usize].iter().copied().filter(|&v| v <= x).collect() };
        let expected = u64::from(below(y) != below(z));
        prop_assert_eq!(c.eval(&[x, y, z]).unwrap(), expected);
        prop_assert_eq!(c.eval(&[x, z, y]).unwrap(), expected);
    }

    #[test]
    fn zero_embedding_decides_range(values in injection(), m in 1u64..=4) {
        let f = Injection::from_values(values.clone()).unwrap();
        let z = match build_zero_embedding(&f, m, 40) {
            Ok(z) => z,
            Err(_) => return Ok(()),
        };
        let composed = compose(&aca_coloring(&f), &z.embedding).unwrap();
        prop_assert!(composed.tabulate(m).unwrap().iter().all(|&e| e == 0));
        for x in 0..m {
            match range_decide(&f, &z.embedding, x, m).unwrap() {
                RangeDecision::Decided { member, .. } => prop_assert_eq!(member, values.contains(&x)),
                RangeDecision::Exhausted { .. } => prop_assert!(m < 2),
            }
        }
    }

    #[test]
    fn limgame_is_symmetric(n in 1usize..=3, salt in any::<u64>(), pt in prop::collection::vec(0u64..5, 7)) {
        let f = NatMap::native(1 + n, "hash", move |a| Ok(mix(salt, a) % 3));
        let c = limgame_coloring(&f).unwrap();
        let args = &pt[..1 + 2 * n];
        let mut swapped = vec![args[0]];
        swapped.extend_from_slice(&args[1 + n..]);
        swapped.extend_from_slice(&args[1..=n]);
        let left = f.eval(&args[..=n]).unwrap();
        let right = f.eval(&swapped[..=n]).unwrap();
        prop_assert_eq!(c.eval(args).unwrap(), u64::from(left == right));
        prop_assert_eq!(c.eval(args).unwrap(), c.eval(&swapped).unwrap());
    }

    #[test]
    fn limgame_expression_matches_native(k in 1u64..4, y in 0u64..6, z in 0u64..6, x in 0u64..6) {
        let f = NatMap::parse(2, &format!("min(x2,add(x1,{k}))")).unwrap();
        let c = limgame_coloring(&f).unwrap();
        prop_assert_eq!(c.eval(&[x, y, z]).unwrap(), u64::from(y.min(x + k) == z.min(x + k)));
    }

    #[test]
    fn tuple_coloring_decodes(salt in any::<u64>(), x in 0u64..3, z in 0u64..5) {
        let f = NatMap::native(2, "hash", move |a| Ok(mix(salt, a) % 4));
        let code = tuple_coloring(&f).eval(&[x, z]).unwrap();
        let expected: Vec<u64> = (0..=x).map(|u| f.eval(&[u, z]).unwrap()).collect();
        prop_assert_eq!(decode(code).unwrap(), expected);
    }

    #[test]
    fn limit_reduce_reads_the_late_value(k in 0u64..6, x in 0u64..20) {
        let c = Coloring::parse(2, 3, &format!("mod(min(x2,add(x1,{k})),3)"))
            .unwrap()
            .with_certificate(StabilityCertificate::new(1, vec![NatMap::parse(1, &format!("add(x1,{k})")).unwrap()]).unwrap())
            .unwrap();
        let got = limit_reduce(&c, &[x], &LimitSampler::default()).unwrap();
        prop_assert_eq!(got, c.eval(&[x, x + k + 1000]).unwrap());
    }

    #[test]
    fn gamelim_strategy_recovers_the_base(n in 1usize..=2, salt in any::<u64>()) {
        // f(x, ȳ) = base(x) plus junk_i(x, y_1..y_i) for each i with
        // y_i below its modulus, so every modulus is genuine.
        let moduli: Vec<NatMap> = (0..n)
            .map(|i| NatMap::native(1 + i, format!("mu{i}"), move |a| Ok(mix(salt ^ i as u64, a) % 4)))
            .collect();
        let mus = moduli.clone();
        let top = NatMap::native(1 + n, "top", move |a| {
            let mut v = mix(salt, &a[..1]) % 5;
            for i in 0..n {
                if a[1 + i] < mus[i].eval(&a[..=i])? {
                    v += 1 + mix(salt.rotate_left(7) ^ i as u64, &a[..2 + i]) % 3;
                }
            }
            Ok(v)
        });
        let tower = LimitTower::from_top(top, moduli).unwrap();
        tower.verify(5, &LimitSampler::default()).unwrap();
        let sigma = gamelim_strategy(&tower);
        let box_ = if n == 1 { 6 } else { 4 };
        gamelim_verify(&tower, &sigma, box_).unwrap();
        let flim = extract_flim(&sigma, tower.top(), box_, Stability::Certified).unwrap();
        prop_assert_eq!(flim.h(), (0..box_).collect::<Vec<_>>());
        for x in flim.h() {
            prop_assert_eq!(flim.f_inf(x), Some(mix(salt, &[x]) % 5));
            prop_assert_eq!(flim.f_inf(x), Some(tower.base().eval(&[x]).unwrap()));
        }
    }

    #[test]
    fn hwrt_normalize_output_is_a_witness(cells in prop::collection::vec(0u64..2, 1..50), l in 1usize..5) {
        let n = 24;
        let values: Vec<u64> = (0..n * n).map(|i| cells[i as usize % cells.len()]).collect();
        let c = Coloring::table(2, 2, n, values).unwrap();
        let g: Vec<u64> = (0..=n).step_by(2).collect();
        let p = LargenessPolicy::new(n, 2, 0, 1).unwrap();
        for d in 0..2 {
            let v = hwrt_normalize(&c, d, &g, &p, l).unwrap();
            let h = v.witness.clone().unwrap();
            prop_assert!(h.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(h.iter().all(|x| g.contains(x)));
            if v.outcome.is_verified() {
                prop_assert_eq!(h.len(), l + 1);
                prop_assert!(hwrt_check(&c, d, &h, &p).unwrap());
            }
        }
    }
}
