//! Truncated volume estimates: a finite hull converges, a crown keeps growing.

use hpq::estimate::{delta_region_estimate, mc_volume_estimate};
use hpq::named;

fn main() {
    let seed = 0xC0FFEE;
    let samples = 200_000;
    for (name, s) in [("pentagon", named::pentagon()), ("crown(2)", named::crown(2))] {
        println!("{name}");
        for r in [2.0, 4.0, 8.0, 16.0, 32.0] {
            let v = mc_volume_estimate(&s, r, samples, seed).unwrap();
            let d = delta_region_estimate(&s, r, samples, seed).unwrap();
            println!(
                "  R = {r:>4}: hull {:>9.4} ± {:.4}   Δ {:>9.4} ± {:.4}",
                v.estimate, v.std_error, d.estimate, d.std_error
            );
        }
    }
}
