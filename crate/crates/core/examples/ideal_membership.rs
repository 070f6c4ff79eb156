// Ideal membership in the free Lie algebra: on the double-broken diamond the
// sets `r` and `j` generate different ideals.
//
// Run with `cargo run --example ideal_membership`.

use liequad::free_lie::{self, ideal_contains, quotient_dim, Multibracket};
use liequad::{fixtures, form, relations};

fn main() {
    let q = fixtures::form("diamond_zero_relations").expect("bundled form");
    println!("positive definite: {}", form::is_positive_definite(&q));

    let v = Multibracket::parse_one_based("4,3,2,1").expect("valid bracket");
    println!("{v} = {}", free_lie::expand(&v, q.n()));

    let r = relations::gen_r(&q).expect("weakly positive");
    let j = relations::gen_j(&q);
    println!("{v} in (r): {}", ideal_contains(&q, &r, &v));
    println!("{v} in (j): {}", ideal_contains(&q, &j, &v));

    let e = v.degree(q.n());
    println!("quotient dimension in degree {e}: r {}, j {}", quotient_dim(&q, &r, &e), quotient_dim(&q, &j, &e));
}
