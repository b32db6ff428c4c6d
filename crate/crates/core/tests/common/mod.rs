#![allow(dead_code)]

use hpq::cohomology::Cochain1;
use hpq::graph::Graph;
use hpq::rational::{frac, Rational};
use hpq::simplex::{realize_from_cochain, MarkedSimplex};
use rand::Rng;

pub fn random_positive<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(1..=9), rng.gen_range(1..=5))
}

pub fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    let v = random_positive(rng);
    if rng.gen_bool(0.5) { v } else { -v }
}

/// Random graph on `n` vertices with edge density `p` and loop density `loops`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, loops: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        if rng.gen_bool(loops) {
            edges.push((i, i));
        }
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_cochain<R: Rng>(rng: &mut R, graph: &Graph) -> Cochain1<Rational> {
    Cochain1::from_fn(graph, |_| random_positive(rng)).unwrap()
}

/// Random simplex on `n` points, by rejection over random graphs and cochains.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> MarkedSimplex {
    loop {
        let p = rng.gen_range(0.15..0.7);
        let loops = rng.gen_range(0.0..0.5);
        let g = random_graph(rng, n, p, loops);
        let f = random_cochain(rng, &g);
        if let Ok(s) = realize_from_cochain(&f) {
            return s;
        }
    }
}
