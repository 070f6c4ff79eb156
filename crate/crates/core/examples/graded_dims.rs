// Graded dimensions of the quotient of the free Lie algebra by a relation
// set, for D4 with both the full set `r` and the small set `j`.
//
// Run with `cargo run --example graded_dims`.

use liequad::free_lie::{self, lie_algebra};
use liequad::relations;
use liequad::{fixtures, roots, IntVector};

fn main() {
    let q = fixtures::form("d4").expect("bundled form");
    let roots = roots::positive_roots(&q, roots::DEFAULT_ROOT_CAP).expect("finite");

    for set in [relations::gen_r(&q).expect("finite"), relations::gen_j(&q)] {
        let dims = lie_algebra(&q, &set).expect("finite");
        println!("relations {} ({} generators)", set.tag(), set.len());
        for (e, d) in dims.support() {
            println!("  {e}  dim {d}");
        }
        println!(
            "  total {} against {} positive roots, vanishing from degree {:?}",
            dims.total(),
            roots.len(),
            dims.nilpotency_certified_at()
        );
    }

    // free Lie algebra dimensions for comparison
    for e in [[1, 1], [2, 1], [2, 2], [3, 2]] {
        let e = IntVector::new(e.to_vec());
        println!("free Lie algebra on 2 letters, degree {e}: {}", free_lie::free_lie_dim(&e));
    }
}
