// Parse a form, classify it, and list its positive roots with Weyl chains.
//
// Run with `cargo run --example forms_and_roots`.

use liequad::form::{self, WeakPositivity};
use liequad::roots;
use liequad::UnitForm;

fn main() {
    // the diamond poset form: a square 1-2-4-3-1 of solid edges plus a
    // broken diagonal between 1 and 4
    let q: UnitForm = "n 4\n\
                       edge 1 2 solid\n\
                       edge 1 3 solid\n\
                       edge 2 4 solid\n\
                       edge 3 4 solid\n\
                       edge 1 4 broken\n"
        .parse()
        .expect("valid form");

    println!("form: {q}");
    println!("cartan matrix: {:?}", form::cartan_matrix(&q));
    println!("leading minors: {:?}", form::leading_minors(&q).iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("positive definite: {}", form::is_positive_definite(&q));
    match form::is_weakly_positive(&q, form::DEFAULT_BOX_BOUND) {
        WeakPositivity::WeaklyPositive => println!("weakly positive"),
        WeakPositivity::NotWeaklyPositive(w) => println!("not weakly positive, q{w} <= 0"),
        WeakPositivity::Inconclusive => println!("weak positivity undecided within the box"),
    }

    let set = roots::positive_roots(&q, roots::DEFAULT_ROOT_CAP).expect("finitely many roots");
    println!("{} positive roots, maximal height {}", set.len(), set.max_height());
    for r in set.roots() {
        let chain = roots::weyl_chain(&q, r).expect("every positive root descends");
        let steps: Vec<String> = chain.steps().iter().map(ToString::to_string).collect();
        println!("  {}", steps.join(" -> "));
    }

    // a form that is not weakly positive: the Kronecker form x1^2 + x2^2 - 2 x1 x2
    let kronecker = UnitForm::from_coefficients(2, &[(1, 2, -2)]).expect("valid form");
    println!("kronecker: {:?}", form::is_weakly_positive(&kronecker, form::DEFAULT_BOX_BOUND));
}
