mod common;

use hpq::cohomology::{
    classes_equal, h0_dimension, h1_dimension, is_sign_coboundary, mat, restrict_sign_part, Cochain0, Cochain1,
    Coefficients, Z2,
};
use hpq::graph::Graph;
use hpq::rational::{int, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn incidence(g: &Graph) -> Vec<Vec<Rational>> {
    g.edges()
        .map(|e| {
            let (i, j) = e.endpoints();
            let mut row = vec![int(0); g.n()];
            row[i] += int(1);
            row[j] += int(1);
            row
        })
        .collect()
}

fn gf2_rank(g: &Graph) -> usize {
    let mut rows: Vec<u32> = g
        .edges()
        .filter(|e| !e.is_loop())
        .map(|e| {
            let (i, j) = e.endpoints();
            (1 << i) | (1 << j)
        })
        .collect();
    let mut rank = 0;
    for bit in 0..g.n() {
        if let Some(k) = (rank..rows.len()).find(|&k| rows[k] >> bit & 1 == 1) {
            rows.swap(rank, k);
            let pivot = rows[rank];
            for r in rows.iter_mut().skip(rank + 1) {
                if *r >> bit & 1 == 1 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

#[test]
fn dimensions_match_incidence_ranks_exhaustively() {
    for n in 1..=5 {
        for g in Graph::enumerate(n, true) {
            let m = g.edge_count();
            let rank_q = if m == 0 { 0 } else { hpq::dense::rank(&incidence(&g)) };
            assert_eq!(h0_dimension(&g, Coefficients::Real), n - rank_q, "{g:?}");
            assert_eq!(h1_dimension(&g, Coefficients::Real), m - rank_q, "{g:?}");
            let rank_2 = gf2_rank(&g);
            assert_eq!(h0_dimension(&g, Coefficients::Z2), n - rank_2, "{g:?}");
            assert_eq!(h1_dimension(&g, Coefficients::Z2), m - rank_2, "{g:?}");
        }
    }
}

#[test]
fn sign_coboundaries_match_brute_force() {
    for n in 1..=4 {
        for g in Graph::enumerate(n, true) {
            let edges: Vec<_> = g.edges().copied().collect();
            let coboundaries: std::collections::BTreeSet<Vec<bool>> = (0u32..1 << n)
                .map(|mask| {
                    edges
                        .iter()
                        .map(|e| {
                            let (i, j) = e.endpoints();
                            ((mask >> i) ^ (mask >> j)) & 1 == 1
                        })
                        .collect()
                })
                .collect();
            for bits in 0u32..1 << edges.len() {
                let f = Cochain1::from_fn(&g, |e| {
                    let k = edges.iter().position(|x| *x == e).unwrap();
                    Z2(bits >> k & 1 == 1)
                })
                .unwrap();
                let pattern: Vec<bool> = edges.iter().map(|e| f.get(e).0).collect();
                match is_sign_coboundary(&f) {
                    Some(g0) => {
                        assert!(coboundaries.contains(&pattern));
                        assert_eq!(g0.differential(), f);
                    }
                    None => assert!(!coboundaries.contains(&pattern)),
                }
            }
        }
    }
}

fn graph_and_cochains() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..=7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn gauge_orbits_are_classes((seed, n) in graph_and_cochains()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.5, 0.3);
        let f = Cochain1::from_fn(&g, |_| common::random_nonzero(&mut rng)).unwrap();
        let gauge = Cochain0::new(&g, (0..n).map(|_| common::random_nonzero(&mut rng)).collect()).unwrap();
        let moved = f.gauge(&gauge).unwrap();
        let w = classes_equal(&f, &moved).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(w.unwrap().verify(&f, &moved));
        let back = classes_equal(&moved, &f).unwrap();
        prop_assert!(back.is_some_and(|w| w.verify(&moved, &f)));
        prop_assert_eq!(mat(&f).signature(), mat(&moved).signature());
        prop_assert_eq!(is_sign_coboundary(&restrict_sign_part(&f)).is_some(), is_sign_coboundary(&restrict_sign_part(&moved)).is_some());
    }

    #[test]
    fn class_equality_is_an_equivalence((seed, n) in graph_and_cochains()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.5, 0.3);
        // small value set so that equal classes occur often
        let pick = |rng: &mut ChaCha8Rng| {
            use rand::seq::SliceRandom;
            [int(1), int(2), int(4)].choose(rng).unwrap().clone()
        };
        let fs: Vec<Cochain1<Rational>> = (0..3).map(|_| Cochain1::from_fn(&g, |_| pick(&mut rng)).unwrap()).collect();
        prop_assert!(classes_equal(&fs[0], &fs[0]).unwrap().is_some());
        for a in 0..3 {
            for b in 0..3 {
                let ab = classes_equal(&fs[a], &fs[b]).unwrap();
                prop_assert_eq!(ab.is_some(), classes_equal(&fs[b], &fs[a]).unwrap().is_some());
                if let Some(w) = &ab {
                    prop_assert!(w.verify(&fs[a], &fs[b]));
                }
                for c in 0..3 {
                    if ab.is_some() && classes_equal(&fs[b], &fs[c]).unwrap().is_some() {
                        prop_assert!(classes_equal(&fs[a], &fs[c]).unwrap().is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn rational_gauge_reproduces_the_target((seed, n) in graph_and_cochains()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.5, 0.3);
        let f = common::random_cochain(&mut rng, &g);
        let gauge = Cochain0::new(&g, (0..n).map(|_| common::random_nonzero(&mut rng)).collect()).unwrap();
        let moved = f.gauge(&gauge).unwrap();
        let w = classes_equal(&f, &moved).unwrap().unwrap();
        if let Some(values) = w.rational_gauge() {
            let h = Cochain0::new(&g, values).unwrap();
            prop_assert_eq!(f.gauge(&h).unwrap(), moved);
        }
    }
}

#[test]
fn cycle_perturbation_changes_the_class() {
    let g = Graph::cycle(6);
    let f = Cochain1::constant(&g, int(1));
    let e = *g.edges().next().unwrap();
    let bumped = f.with_value(e, int(2)).unwrap();
    assert!(classes_equal(&f, &bumped).unwrap().is_none());
    let odd = Graph::cycle(5);
    let f = Cochain1::constant(&odd, int(1));
    let e = *odd.edges().next().unwrap();
    assert!(classes_equal(&f, &f.with_value(e, int(2)).unwrap()).unwrap().is_some());
}
