// Generate the relation sets of a form and its chordless cycles.
//
// Run with `cargo run --example relation_sets`.

use liequad::relations::{self, Tag};
use liequad::fixtures;

fn main() {
    let q = fixtures::form("diamond").expect("bundled form");

    for cycle in relations::chordless_cycles(&q) {
        println!(
            "chordless cycle {:?}{}",
            cycle.to_one_based(),
            if cycle.is_positive() { " (positive)" } else { "" }
        );
    }

    for tag in [Tag::R1, Tag::R0, Tag::R2, Tag::P, Tag::J, Tag::R] {
        let set = relations::generate(&q, tag).expect("weakly positive form");
        println!("{tag}: {} elements", set.len());
    }

    let j = relations::gen_j(&q);
    for v in j.elements() {
        println!("  {v}");
    }
}
