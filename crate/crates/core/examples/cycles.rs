//! Cohomology classes of cycles and their signatures.

use hpq::census::cycle_class_table;

fn main() {
    for n in 1..=12 {
        let t = cycle_class_table(n);
        let strata: Vec<String> = t
            .strata
            .iter()
            .map(|s| format!("{:?} {}{}", s.kind, s.signature, if s.verified { "" } else { " (unverified)" }))
            .collect();
        println!("C_{n:<2} h1 = {}  {}", t.h1_dimension, strata.join("; "));
    }
}
