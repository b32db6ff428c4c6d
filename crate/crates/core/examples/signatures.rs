//! Exact inertia of cyclic forms and of a few Gram matrices.

use hpq::forms::{circ, SymMatrix};
use hpq::rational::{frac, int};

fn main() {
    for n in 3..=8 {
        let a = vec![int(-1); n];
        let m = circ(&a).unwrap();
        println!("circ(-1 x {n}): signature {}  det {}", m.signature(), m.determinant());
    }
    let twisted = circ(&[int(-2), int(-1), int(-1), int(-1)]).unwrap();
    println!("circ(-2,-1,-1,-1): signature {}", twisted.signature());

    let m = SymMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]).unwrap();
    let d = m.diagonalize();
    println!("congruence diagonal of {m:?}:");
    for v in &d.diagonal {
        println!("  {v}");
    }
    let scaled = m.congruent_by_diagonal(&[frac(1, 2), int(3), int(-5)]);
    println!("after diagonal congruence: {}", scaled.signature());
}
