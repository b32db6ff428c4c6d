//! The named simplices and their JSON form.

use hpq::named::NamedExample;
use hpq::simplex::SimplexJson;

fn main() {
    for name in ["ideal-hp:3", "crown:2", "pentagon", "h22-nonideal", "nonideal-infinite:2:2", "ideal-infinite:3:1"] {
        let e: NamedExample = name.parse().unwrap();
        let s = e.build().unwrap();
        println!(
            "{name}: H^{{{},{}}}, ideal {}, graph {:?}",
            s.p(),
            s.q(),
            s.is_ideal(),
            s.graph()
        );
        println!("  {}", serde_json::to_string(&SimplexJson::from(&s)).unwrap());
    }
}
