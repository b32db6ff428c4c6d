mod common;

use hpq::census::{
    adjacency_permutation, adjacency_permutations, census, cycle_type, cycle_type_matrix, cycle_types,
    h22_ideal_census, parity, perturbation_realize, row_consistent, sampled_signatures, signature_from_cycle_type,
    unmarked_isometric,
};
use hpq::forms::SymMatrix;
use hpq::graph::Graph;
use hpq::rational::frac;
use hpq::simplex::MarkedSimplex;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn inversion_parity(p: &[usize]) -> i8 {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inv % 2 == 0 { 1 } else { -1 }
}

#[test]
fn adjacency_permutations_match_brute_force() {
    for n in 1..=4 {
        let all = permutations(n);
        for g in Graph::enumerate(n, true) {
            let mut expected: Vec<Vec<usize>> =
                all.iter().filter(|p| p.iter().enumerate().all(|(k, &v)| g.has_edge(k, v))).cloned().collect();
            expected.sort();
            assert_eq!(adjacency_permutations(&g).unwrap(), expected, "{g:?}");
            for par in [1, -1] {
                let first = expected.iter().find(|p| inversion_parity(p) == par);
                assert_eq!(adjacency_permutation(&g, Some(par)).unwrap().as_ref(), first);
            }
        }
    }
    for p in permutations(6) {
        assert_eq!(parity(&p), inversion_parity(&p));
    }
}

#[test]
fn cycle_type_matrices_have_the_predicted_signature() {
    for n in 1..=10 {
        for ct in cycle_types(n) {
            assert_eq!(cycle_type_matrix(&ct).signature(), signature_from_cycle_type(&ct), "{ct:?}");
        }
    }
}

#[test]
fn perturbations_keep_the_signature() {
    let eps = frac(1, 1000);
    for n in 2..=5 {
        let g = Graph::new(n, (0..n).flat_map(|i| (i..n).map(move |j| (i, j)))).unwrap();
        let all = adjacency_permutations(&g).unwrap();
        for sigma in all.clone() {
            let p = perturbation_realize(&g, &sigma, &eps).unwrap();
            assert!(p.matches(), "{sigma:?}: {} vs {}", p.signature, p.expected);
            let s = p.simplex.expect("non-degenerate");
            assert_eq!(s.graph(), g);
            assert_eq!((s.p(), s.q() + 1), (p.expected.pos, p.expected.neg));
            let want = if s.p() % 2 == 0 { 1 } else { -1 };
            assert!(all.iter().any(|t| parity(t) == want));
        }
    }
}

fn has_hamiltonian_cycle(g: &Graph) -> bool {
    // cycles through vertex 0, each counted twice
    permutations(4).iter().any(|rest| {
        let order: Vec<usize> = std::iter::once(0).chain(rest.iter().map(|v| v + 1)).collect();
        (0..5).all(|k| g.has_edge(order[k], order[(k + 1) % 5]))
    })
}

#[test]
fn h22_census_filter_is_the_hamiltonian_count() {
    let (report, rows) = h22_ideal_census();
    assert_eq!(report.graphs, 1024);
    let hamiltonian = Graph::enumerate(5, false).filter(has_hamiltonian_cycle).count();
    assert_eq!(report.passing_filter, hamiltonian);
    assert_eq!(hamiltonian, 218);
    assert!(report.counterexamples.is_empty());
    assert_eq!(report.strict_boundary, report.passing_filter);
    for (row, g) in rows.iter().zip(Graph::enumerate(5, false)) {
        assert_eq!(Graph::try_from(row.graph.clone()).unwrap(), g);
        assert_eq!(row.passes_filter, has_hamiltonian_cycle(&g));
    }
}

#[test]
fn census_rows_are_consistent() {
    for n in 1..=3 {
        let rows = census(n, 9).unwrap();
        assert_eq!(rows.len(), 1 << (n * (n + 1) / 2));
        for (k, row) in rows.iter().enumerate() {
            assert_eq!(row.encoding, k as u64);
            assert!(row_consistent(row), "{row:?}");
            let perms = row.adjacency_permutations.even || row.adjacency_permutations.odd;
            assert_eq!(perms, !row.predicted_signatures.is_empty());
            if !perms {
                assert!(row.realized_signatures.is_empty());
            }
        }
    }
    assert_eq!(census(3, 9).unwrap(), census(3, 9).unwrap());
}

#[test]
fn sampled_signatures_are_seeded() {
    let g = Graph::cycle(4);
    assert_eq!(sampled_signatures(&g, 40, 1), sampled_signatures(&g, 40, 1));
    for s in sampled_signatures(&Graph::cycle(6), 40, 2) {
        assert_eq!((s.pos, s.neg), (3, 3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn relabeled_simplices_are_unmarked_isometric(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_simplex(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let t = MarkedSimplex::from_gram(SymMatrix::from_fn(n, |i, j| s.gram().get(perm[i], perm[j]).clone())).unwrap();
        let (iota, witness) = unmarked_isometric(&s, &t).unwrap().expect("relabeling is an isometry");
        let pulled = MarkedSimplex::from_gram(SymMatrix::from_fn(n, |i, j| t.gram().get(iota[i], iota[j]).clone())).unwrap();
        prop_assert!(witness.verify(&s.cocycle(), &pulled.cocycle()));
        let other = common::random_simplex(&mut rng, n);
        if let Some((iota, w)) = unmarked_isometric(&s, &other).unwrap() {
            let pulled = MarkedSimplex::from_gram(SymMatrix::from_fn(n, |i, j| other.gram().get(iota[i], iota[j]).clone())).unwrap();
            prop_assert!(w.verify(&s.cocycle(), &pulled.cocycle()));
        }
    }

    #[test]
    fn parity_of_realized_signatures(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.5, 0.3);
        let perms = adjacency_permutations(&g).unwrap();
        for s in sampled_signatures(&g, 20, seed) {
            let want = if s.pos % 2 == 0 { 1 } else { -1 };
            prop_assert!(perms.iter().any(|p| parity(p) == want), "{:?} {}", g, s);
        }
        for p in &perms {
            let ct = cycle_type(p);
            prop_assert_eq!(ct.n(), n);
        }
    }
}
