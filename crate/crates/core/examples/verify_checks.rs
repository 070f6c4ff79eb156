// Run every structural check on every bundled form.
//
// Run with `cargo run --release --example verify_checks`.

use liequad::fixtures;
use liequad::verify::{run_checks, Check, CheckOptions};

fn main() {
    let options = CheckOptions::default();
    for (name, q) in fixtures::all_forms() {
        println!("{name}");
        for report in run_checks(&q, &Check::default_set(), &options) {
            let report = report.expect("within budget");
            println!("  {:<20} {}", report.theorem, report.verdict);
        }
    }
}
