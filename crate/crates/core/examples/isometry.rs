//! Marked and unmarked isometry of simplices.

use hpq::census::unmarked_isometric;
use hpq::named;
use hpq::rational::{frac, int};
use hpq::simplex::{isometric, MarkedSimplex};

fn main() {
    let p = named::pentagon();
    let rescaled = MarkedSimplex::from_point_set(p.points().rescaled(&[int(2), frac(1, 3), int(5), int(1), frac(7, 2)])).unwrap();
    let w = isometric(&p, &rescaled).expect("gauge equivalent");
    let t2: Vec<String> = w.t_squared.iter().map(hpq::rational::format).collect();
    println!("pentagon vs rescaled: isometric, t^2 = {}", t2.join(", "));

    let perm = [2, 0, 1, 4, 3];
    let g = p.gram();
    let relabeled = MarkedSimplex::from_gram(hpq::forms::SymMatrix::from_fn(5, |i, j| g.get(perm[i], perm[j]).clone())).unwrap();
    println!("marked isometric to a relabeling: {}", isometric(&p, &relabeled).is_some());
    let (iota, _) = unmarked_isometric(&p, &relabeled).unwrap().expect("same up to relabeling");
    println!("unmarked isometric via {iota:?}");
}
