use indec_core::lexcore::{check_embedding, check_growth, compose, Coloring, LargenessPolicy};
use indec_core::principles::{
    elem_indec_check, hwrt_check, hwrt_search, lex_indec_search, row_hits, rt_search, wrt_check, wrt_search,
};
use indec_core::reductions::hwrt_normalize;
use proptest::prelude::*;

fn pair_coloring(n: u64, colors: u64, cells: &[u64]) -> Coloring {
    let values: Vec<u64> = (0..n * n).map(|i| cells[i as usize % cells.len()] % colors).collect();
    Coloring::table(2, colors, n, values).unwrap()
}

fn cells() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..8, 1..97)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rt_witnesses_are_homogeneous(cells in cells(), colors in 1u64..=3) {
        let c = pair_coloring(10, colors, &cells);
        let p = LargenessPolicy::new(10, 3, 0, 1).unwrap();
        let v = rt_search(&c, &p).unwrap();
        prop_assert_eq!(&v, &rt_search(&c, &p).unwrap());
        if v.outcome.is_verified() {
            let h = v.witness.clone().unwrap();
            let d = v.color.unwrap();
            prop_assert_eq!(h.len(), 3);
            for (i, &x) in h.iter().enumerate() {
                for &y in &h[i + 1..] {
                    prop_assert!(x < y);
                    prop_assert_eq!(c.eval(&[x, y]).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn wrt_witnesses_recheck(cells in cells(), colors in 1u64..=3) {
        let c = pair_coloring(12, colors, &cells);
        let p = LargenessPolicy::new(12, 3, 0, 1).unwrap();
        let v = wrt_search(&c, &p).unwrap();
        prop_assert_eq!(&v, &wrt_search(&c, &p).unwrap());
        if let (Some(h), Some(d)) = (&v.witness, v.color) {
            prop_assert!(v.outcome.is_verified());
            prop_assert!(wrt_check(&c, h, d, &p).unwrap());
            for &x in h {
                prop_assert!(row_hits(&c, x, d, 12).unwrap() >= 3);
            }
        }
    }

    /// A homogeneous set long enough for its own rows is a weak witness.
    #[test]
    fn rt_implies_wrt(cells in cells(), colors in 1u64..=2) {
        let c = pair_coloring(10, colors, &cells);
        let rt = LargenessPolicy::new(10, 6, 0, 1).unwrap();
        let v = rt_search(&c, &rt).unwrap();
        if let (Some(h), Some(d)) = (&v.witness, v.color) {
            let t = 3;
            let rows = &h[..t];
            let weak = LargenessPolicy::new(10, t as u64, 0, 1).unwrap();
            prop_assert!(wrt_check(&c, rows, d, &weak).unwrap());
            prop_assert!(wrt_search(&c, &weak).unwrap().outcome.is_verified());
        }
    }

    #[test]
    fn hwrt_witnesses_recheck(cells in cells(), colors in 1u64..=2) {
        let c = pair_coloring(9, colors, &cells);
        let p = LargenessPolicy::new(9, 2, 0, 1).unwrap();
        let v = hwrt_search(&c, &p, 3, None).unwrap();
        prop_assert_eq!(&v, &hwrt_search(&c, &p, 3, None).unwrap());
        if v.outcome.is_verified() {
            let h = v.witness.clone().unwrap();
            prop_assert_eq!(h.len(), 4);
            prop_assert!(hwrt_check(&c, v.color.unwrap(), &h, &p).unwrap());
        }
    }

    #[test]
    fn lex_witnesses_recheck_and_imply_elem(cells in cells(), colors in 1u64..=2, m in 1u64..=3) {
        let b = 8;
        let c = pair_coloring(b, colors, &cells);
        let v = lex_indec_search(&c, m, b).unwrap();
        prop_assert_eq!(&v, &lex_indec_search(&c, m, b).unwrap());
        if !v.outcome.is_verified() {
            return Ok(());
        }
        let h = v.witness.clone().unwrap();
        let d = v.color.unwrap();
        prop_assert!(check_embedding(&h).ok);
        prop_assert!(check_growth(&h).ok);
        let composed = compose(&c, &h).unwrap();
        prop_assert!(composed.tabulate(m).unwrap().iter().all(|&e| e == d));
        for j in 0..m {
            let img = h.image(&[j, 0]).unwrap();
            prop_assert_eq!(c.eval(img).unwrap(), d);
            prop_assert!(img[0] >= j);
        }
        // With one witness tuple per level, color d is seen past frontier 0.
        let p = LargenessPolicy::new(b, 1, 0, 0).unwrap();
        prop_assert!(elem_indec_check(&c, &p).unwrap().colors.contains(&d));
    }

    /// The first coordinate of a lex witness gives blocks that each see its
    /// color along a whole slice; normalizing them yields a hyper-weak witness.
    #[test]
    fn lex_first_coordinates_feed_hwrt(cells in cells(), m in 2u64..=3) {
        let b = 10;
        let c = pair_coloring(b, 2, &cells);
        let v = lex_indec_search(&c, m, b).unwrap();
        if !v.outcome.is_verified() {
            return Ok(());
        }
        let h = v.witness.clone().unwrap();
        let d = v.color.unwrap();
        let g: Vec<u64> = (0..m).map(|i| h.image(&[i, 0]).unwrap()[0]).collect();
        prop_assert!(g.windows(2).all(|w| w[0] < w[1]));
        for i in 0..m {
            for y in 0..m {
                let img = h.image(&[i, y]).unwrap();
                let next = if i + 1 < m { g[i as usize + 1] } else { b };
                prop_assert!(g[i as usize] <= img[0] && img[0] < next);
                prop_assert_eq!(c.eval(img).unwrap(), d);
            }
        }
        // Rectangles reached by the image contain a d-pair.
        let block = |i: usize| g[i - 1]..if i < g.len() { g[i] } else { b };
        for i1 in 1..=g.len() {
            for i2 in i1 + 1..=g.len() {
                let reached = (0..m).any(|y| block(i2).contains(&h.image(&[i1 as u64 - 1, y]).unwrap()[1]));
                if reached {
                    let hit = block(i1).any(|x| block(i2).any(|y| c.eval(&[x, y]).unwrap() == d));
                    prop_assert!(hit);
                }
            }
        }
        let p = LargenessPolicy::new(b, 1, 0, 1).unwrap();
        let out = hwrt_normalize(&c, d, &g, &p, 2).unwrap();
        let w = out.witness.clone().unwrap();
        prop_assert!(w.windows(2).all(|x| x[0] < x[1]));
        if out.outcome.is_verified() {
            prop_assert!(hwrt_check(&c, d, &w, &p).unwrap());
        }
    }
}
