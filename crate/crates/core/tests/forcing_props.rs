use indec_core::forcing::{
    extends, in_pprime, one_gen_build, pprime_failure, recheck, s1density_h, Condition, DenseSetSpec,
};
use indec_core::lexcore::{Coloring, LargenessPolicy};
use proptest::prelude::*;

const N: u64 = 16;

fn coloring(cells: &[u64]) -> Coloring {
    let values = (0..N * N).map(|i| cells[i as usize % cells.len()]).collect();
    Coloring::table(2, 2, N, values).unwrap()
}

/// Mostly zeros, so that `ℙ′` is not empty.
fn cells() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::bool::weighted(0.2).prop_map(u64::from), 1..70)
}

fn condition() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(0u64..N, 0..6).prop_map(|s| s.into_iter().collect())
}

/// `ℙ′` by its definition, one block at a time.
fn oracle(p: &[u64], c: &Coloring, slack: u64) -> bool {
    p.windows(2).all(|w| {
        let missing = (0..N)
            .filter(|&y| (w[0]..w[1]).all(|x| c.eval(&[x, y]).unwrap() != 0))
            .count() as u64;
        missing < slack
    })
}

fn specs() -> Vec<DenseSetSpec> {
    let mut out = DenseSetSpec::lengths(4, N);
    out.push(DenseSetSpec::new("even-last", "eq(mod(last,2),0)", 6, N).unwrap());
    out.push(DenseSetSpec::new("wide", "lt(10,monus(last,at(0)))", 3, N).unwrap());
    out.push(DenseSetSpec::new("never", "lt(100,last)", 3, N).unwrap());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pprime_matches_its_definition(cells in cells(), p in condition(), slack in 1u64..6) {
        let c = coloring(&cells);
        let policy = LargenessPolicy::new(N, 2, 0, slack).unwrap();
        prop_assert_eq!(in_pprime(&p, &c, &policy).unwrap(), oracle(&p, &c, slack));
    }

    #[test]
    fn pprime_is_closed_under_prefixes(cells in cells(), p in condition(), slack in 1u64..6) {
        let c = coloring(&cells);
        let policy = LargenessPolicy::new(N, 2, 0, slack).unwrap();
        let failure = pprime_failure(&p, &c, &policy).unwrap();
        for k in 0..=p.len() {
            let inside = in_pprime(&p[..k], &c, &policy).unwrap();
            prop_assert_eq!(inside, failure.is_none_or(|i| k <= i));
        }
    }

    #[test]
    fn one_gen_dispositions_recheck(cells in cells(), start in 0u64..4, slack in 2u64..6) {
        let c = coloring(&cells);
        let policy = LargenessPolicy::new(N, 2, 0, slack).unwrap();
        let q0 = Condition::new(vec![start]).unwrap();
        let specs = specs();
        let run = one_gen_build(&c, &specs, &q0, &policy).unwrap();
        prop_assert_eq!(&run, &one_gen_build(&c, &specs, &q0, &policy).unwrap());
        prop_assert!(in_pprime(&run.g, &c, &policy).unwrap());
        prop_assert!(run.g.starts_with(&[start]));
        let mut prev = q0.clone();
        for (d, spec) in run.dispositions.iter().zip(&specs) {
            prop_assert_eq!(&d.set, &spec.name);
            prop_assert!(extends(&d.condition, &prev));
            prop_assert!(recheck(d, spec, &c, &policy).unwrap());
            prev = d.condition.clone();
        }
        if run.outcome.is_verified() {
            prop_assert_eq!(run.dispositions.len(), specs.len());
            prop_assert_eq!(run.g.as_slice(), prev.values());
        }
    }

    #[test]
    fn s1density_steps_extend(cells in cells(), slack in 2u64..6) {
        let c = coloring(&cells);
        let policy = LargenessPolicy::new(N, 2, 0, slack).unwrap();
        let spec = DenseSetSpec::new("even-last", "eq(mod(last,2),0)", 6, N).unwrap();
        let q = Condition::empty();
        let run = s1density_h(&q, &spec, &c, &policy, 4).unwrap();
        prop_assert_eq!(&run, &s1density_h(&q, &spec, &c, &policy, 4).unwrap());
        prop_assert!(run.h.windows(2).all(|w| w[0] < w[1]));
        for (k, step) in run.steps.iter().enumerate() {
            prop_assert_eq!(step.q_n.values(), &[run.h[k]][..]);
            prop_assert!(extends(&step.r_n, &step.q_n) && step.r_n.len() > step.q_n.len());
            prop_assert!(spec.contains(step.r_n.values()).unwrap());
            prop_assert_eq!(step.r_in_pprime, oracle(step.r_n.values(), &c, slack));
            prop_assert_eq!(Some(run.h[k + 1]), step.r_n.last());
        }
    }
}
