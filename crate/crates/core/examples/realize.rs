//! Positive lifts, realization of a cochain and the number of convex hulls.

use hpq::cohomology::Cochain1;
use hpq::graph::Graph;
use hpq::rational::int;
use hpq::simplex::{convex_hull_count, find_positive_lift, realize_from_cochain, MarkedPointSet};

fn main() {
    let g = Graph::from_one_based(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 1)]).unwrap();
    let f = Cochain1::from_fn(&g, |e| int(1 + e.endpoints().1 as i64)).unwrap();
    let s = realize_from_cochain(&f).expect("invertible Mat");
    println!("realized in H^{{{},{}}}", s.p(), s.q());
    println!("gram {:?}", s.gram());
    println!("cocycle matches input: {}", s.cocycle() == f);

    let signs = [1, -1, 1, -1];
    let flipped = s.points().with_signs(&signs);
    let lift = find_positive_lift(&flipped).expect("positive lift exists");
    println!("signs restoring positivity: {lift:?}");

    let degenerate = Cochain1::constant(&Graph::cycle(4), int(1));
    println!("C4 with equal products: {:?}", realize_from_cochain(&degenerate).err());

    for p in 1..=4 {
        let crown = hpq::named::crown(p);
        println!("crown({p}): {} convex hulls", convex_hull_count(crown.points()).unwrap());
    }
    let ps = MarkedPointSet::from_gram(hpq::named::pentagon().gram().clone());
    println!("pentagon: {} convex hull", convex_hull_count(&ps).unwrap());
}
