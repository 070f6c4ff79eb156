// Compare the generated relation sets of the diamond poset form with the
// published lists bundled in `fixtures/`.
//
// Run with `cargo run --example poset_lists`.

use liequad::fixtures;
use liequad::verify::check_poset_example;

fn main() {
    let q = fixtures::form("diamond").expect("bundled form");
    let report = check_poset_example(&q).expect("within budget");
    println!("verdict: {}", report.verdict);
    println!("{}", serde_json::to_string_pretty(&report.details).expect("json"));
}
