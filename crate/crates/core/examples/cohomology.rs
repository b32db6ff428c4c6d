//! Twisted cohomology of a graph and an explicit gauge between two cochains.

use hpq::cohomology::{classes_equal, cycle_basis, h0_dimension, h1_dimension, Cochain0, Cochain1, Coefficients};
use hpq::graph::Graph;
use hpq::rational::{frac, int};

fn main() {
    let g = Graph::from_one_based(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 1), (5, 5)]).unwrap();
    println!("graph {g:?}");
    for c in [Coefficients::Real, Coefficients::Z2] {
        println!("{c:?}: h0 = {}, h1 = {}", h0_dimension(&g, c), h1_dimension(&g, c));
    }
    let basis = cycle_basis(&g);
    let closing: Vec<String> = basis.non_tree_edges().map(|e| e.to_string()).collect();
    println!("non-tree edges: {}", closing.join(", "));

    let f = Cochain1::from_fn(&g, |e| int(1 + e.endpoints().0 as i64)).unwrap();
    let gauge = Cochain0::new(&g, vec![int(2), frac(1, 3), int(5), frac(-1, 2), int(7)]).unwrap();
    let moved = f.gauge(&gauge).unwrap();
    let witness = classes_equal(&f, &moved).unwrap().expect("same class");
    println!("gauge recovered: {}", witness.verify(&f, &moved));

    let bumped = f.with_value(hpq::graph::Edge::new(0, 1), int(10)).unwrap();
    println!("after changing one cycle edge: same class = {}", classes_equal(&f, &bumped).unwrap().is_some());
}
