//! Graph census on four vertices and the ideal H^{2,2} census.

use hpq::census::{census, h22_ideal_census, row_consistent};

fn main() {
    let rows = census(4, 0).unwrap();
    let infinite = rows.iter().filter(|r| !r.verdict.finite).count();
    let consistent = rows.iter().filter(|r| row_consistent(r)).count();
    println!("{} graphs on 4 vertices, {infinite} infinite, {consistent} parity-consistent", rows.len());
    for row in rows.iter().filter(|r| r.realized_signatures.len() > 1).take(5) {
        println!("  {}", serde_json::to_string(row).unwrap());
    }

    let (report, _) = h22_ideal_census();
    println!(
        "H^{{2,2}}: {} graphs, {} with a 5-cycle, {} finite, {} counterexamples",
        report.graphs,
        report.passing_filter,
        report.finite,
        report.counterexamples.len()
    );
}
