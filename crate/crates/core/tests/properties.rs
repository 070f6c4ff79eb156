// Randomized invariants over generated forms and vectors.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use liequad::form::{self, WeakPositivity};
use liequad::free_lie::{self, Multibracket};
use liequad::relations::{self, RelationSet};
use liequad::roots;
use liequad::verify::{self, Verdict};
use liequad::{IntVector, UnitForm};

fn unit_form(max_n: usize, coeff: i64) -> impl Strategy<Value = UnitForm> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-coeff..=coeff, n * (n - 1) / 2).prop_map(move |a| {
            let mut triples = Vec::new();
            let mut k = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    triples.push((i, j, a[k]));
                    k += 1;
                }
            }
            UnitForm::from_coefficients(n, &triples).unwrap()
        })
    })
}

fn weakly_positive_form(max_n: usize) -> impl Strategy<Value = UnitForm> {
    unit_form(max_n, 1).prop_filter("weakly positive", |q| {
        form::is_weakly_positive(q, form::DEFAULT_BOX_BOUND) == WeakPositivity::WeaklyPositive
    })
}

fn form_and_vectors() -> impl Strategy<Value = (UnitForm, Vec<i64>, Vec<i64>, Vec<i64>)> {
    unit_form(5, 2).prop_flat_map(|q| {
        let n = q.n();
        let v = move || prop::collection::vec(-50i64..=50, n);
        (Just(q), v(), v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn pairing_is_symmetric_and_bilinear((q, x, y, z) in form_and_vectors(), a in -5i64..=5, b in -5i64..=5) {
        let iv = |v: &Vec<i64>| IntVector::new(v.clone());
        let p = |u: &Vec<i64>, w: &Vec<i64>| form::pairing(&q, &iv(u), &iv(w)).unwrap();
        prop_assert_eq!(p(&x, &y), p(&y, &x));
        let combo: Vec<i64> = x.iter().zip(&y).map(|(s, t)| a * s + b * t).collect();
        prop_assert_eq!(p(&combo, &z), a * p(&x, &z) + b * p(&y, &z));
        prop_assert_eq!(p(&x, &y), common::pairing_explicit(&q, &x, &y));
        for i in 0..q.n() {
            let e = IntVector::unit(q.n(), i);
            prop_assert_eq!(form::pairing(&q, &e, &iv(&x)).unwrap(), form::pairing_unit(&q, i, &iv(&x)).unwrap());
        }
        prop_assert_eq!(form::evaluate(&q, &iv(&x)).unwrap(), common::q_value(&q, &x));
    }

    #[test]
    fn bigraph_round_trip(q in unit_form(6, 3)) {
        prop_assert_eq!(form::from_bigraph(&form::bigraph(&q)), q.clone());
        let text = q.to_qform();
        prop_assert_eq!(UnitForm::parse_qform(&text).unwrap(), q);
    }

    #[test]
    fn definiteness_is_necessary_on_box(q in unit_form(3, 2)) {
        // definite forms are positive on the box; indefinite small forms have a
        // nonpositive vector in it
        let positive = common::box_vectors(q.n(), 12).iter().all(|x| {
            let c: Vec<i64> = x.iter().map(|k| k - 6).collect();
            c.iter().all(|&k| k == 0) || common::q_value(&q, &c) >= 1
        });
        prop_assert_eq!(form::is_positive_definite(&q), positive);
    }

    #[test]
    fn weak_positivity_verdicts_are_sound(q in unit_form(4, 2)) {
        match form::is_weakly_positive(&q, 6) {
            WeakPositivity::NotWeaklyPositive(w) => {
                prop_assert!(w.is_nonnegative() && w.height() > 0);
                prop_assert!(common::q_value(&q, w.entries()) <= 0);
            }
            WeakPositivity::WeaklyPositive => {
                prop_assert!(common::box_vectors(q.n(), 6).iter().all(|x| common::q_value(&q, x) >= 1));
            }
            WeakPositivity::Inconclusive => {}
        }
    }

    #[test]
    fn roots_chains_and_sequences(q in weakly_positive_form(4)) {
        let set = roots::positive_roots(&q, roots::DEFAULT_ROOT_CAP).unwrap();
        let lib: BTreeSet<Vec<i64>> = set.roots().iter().map(|r| r.entries().to_vec()).collect();
        prop_assert_eq!(&lib, &common::brute_positive_roots(&q, 6));
        for r in set.roots() {
            let chain = roots::weyl_chain(&q, r).unwrap();
            prop_assert_eq!(chain.steps().first(), Some(r));
            prop_assert!(chain.steps().last().unwrap().unit_index().is_some());
            for step in chain.steps() {
                prop_assert!(set.contains(step));
            }
        }
        let sequences = roots::root_sequences(&q, roots::DEFAULT_SEQUENCE_CAP).unwrap();
        let lookup: BTreeSet<&Multibracket> = sequences.iter().collect();
        let degrees: BTreeSet<IntVector> = sequences.iter().map(|s| s.degree(q.n())).collect();
        prop_assert_eq!(&degrees, set.roots());
        for s in &sequences {
            let idx = s.indices();
            for k in 0..idx.len() {
                let suffix = Multibracket::new(idx[k..].to_vec());
                prop_assert!(lookup.contains(&suffix));
            }
        }
    }

    #[test]
    fn quotient_by_r_is_graded_by_roots(q in weakly_positive_form(3)) {
        let set = roots::positive_roots(&q, roots::DEFAULT_ROOT_CAP).unwrap();
        let r = relations::gen_r(&q).unwrap();
        let dims = free_lie::lie_algebra(&q, &r).unwrap();
        for (e, &d) in dims.dims() {
            prop_assert!(d <= u64::from(set.contains(e)), "degree {} dim {}", e, d);
        }
        prop_assert_eq!(dims.nilpotency_certified_at(), Some(set.max_height() + 1));
        prop_assert!(dims.total() <= set.len() as u64);
    }

    #[test]
    fn definite_forms_have_equal_ideals(q in unit_form(4, 1).prop_filter("definite", form::is_positive_definite)) {
        let r = relations::gen_r(&q).unwrap();
        let p = relations::gen_p(&q).unwrap();
        let j = relations::gen_j(&q);
        for (a, b) in [(&j, &r), (&p, &r)] {
            let report = verify::check_ideal_equality(&q, a, b, true).unwrap();
            prop_assert_eq!(report.verdict, Verdict::Pass, "{}", report.details);
        }
    }

    #[test]
    fn cycle_canonicalization_is_representative_independent(shift in 0usize..4, reflect in any::<bool>()) {
        let q = fixtures_diamond();
        for cycle in relations::chordless_cycles(&q) {
            let mut v = cycle.vertices().to_vec();
            let len = v.len();
            v.rotate_left(shift % len);
            if reflect {
                v.reverse();
            }
            let again = relations::canonicalize_cycle(&q, &v);
            prop_assert_eq!(&again, &cycle);
            prop_assert_eq!(relations::canonicalize_cycle(&q, again.vertices()), cycle);
        }
    }

    #[test]
    fn expand_antisymmetry_and_jacobi(
        a in prop::collection::vec(0usize..3, 1..4),
        b in prop::collection::vec(0usize..3, 1..4),
        c in prop::collection::vec(0usize..3, 1..4),
    ) {
        let [x, y, z] = [a, b, c].map(|w| free_lie::expand(&Multibracket::new(w), 3));
        prop_assert!(x.bracket(&y).add(&y.bracket(&x)).is_zero());
        let jacobi = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn chordless_cycles_match_subset_scan(q in unit_form(6, 1)) {
        let n = q.n();
        let found: BTreeSet<Vec<usize>> = relations::chordless_cycles(&q)
            .into_iter()
            .map(|c| {
                let mut v = c.vertices().to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        // a vertex set spans a chordless cycle iff its induced subgraph is
        // connected and 2-regular
        let mut expected = BTreeSet::new();
        for mask in 0u32..1 << n {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if vs.len() < 3 {
                continue;
            }
            let degree_two = vs.iter().all(|&u| vs.iter().filter(|&&w| q.adjacent(u, w)).count() == 2);
            let mut seen = vec![vs[0]];
            let mut k = 0;
            while k < seen.len() {
                let u = seen[k];
                for &w in &vs {
                    if q.adjacent(u, w) && !seen.contains(&w) {
                        seen.push(w);
                    }
                }
                k += 1;
            }
            if degree_two && seen.len() == vs.len() {
                expected.insert(vs);
            }
        }
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn relation_sets_are_canonical(q in weakly_positive_form(4)) {
        let r = relations::gen_r(&q).unwrap();
        let again = RelationSet::new(r.tag(), r.elements().iter().rev().cloned());
        prop_assert_eq!(&again, &r);
        prop_assert!(r.elements().windows(2).all(|w| w[0] < w[1]));
    }
}

fn fixtures_diamond() -> UnitForm {
    liequad::fixtures::form("diamond").unwrap()
}
