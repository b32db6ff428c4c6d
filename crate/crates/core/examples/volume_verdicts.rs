//! Volume finiteness by the three deciders, with certificates.

use hpq::named;
use hpq::volume::{brute_force_weight_oracle, cone_slice_bounded, decide_finiteness, verify_verdict, VerdictJson};

fn main() {
    let cases = [
        ("pentagon", named::pentagon()),
        ("crown(3)", named::crown(3)),
        ("ideal H^4", named::ideal_hp(4)),
        ("h22 non-ideal", named::h22_nonideal_infinite()),
    ];
    for (name, s) in cases {
        let v = decide_finiteness(&s).unwrap();
        let w = brute_force_weight_oracle(&s).unwrap();
        let bounded = cone_slice_bounded(&s);
        println!("{name}: {}", serde_json::to_string(&VerdictJson::from(&v)).unwrap());
        println!(
            "  weight oracle finite {}, slice bounded {}, certificate ok {}",
            w.finite,
            bounded,
            verify_verdict(&s.graph(), &v).is_ok()
        );
    }
}
