// Oracle suites shared by the acceptance target and the regular tests. Each
// returns `Err` with the first counterexample found.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use liequad::form::{self, IntVector};
use liequad::free_lie::{self, Multibracket, TensorPoly};
use liequad::{fixtures, roots, UnitForm};

use super::{brute_positive_roots, expand_word, free_lie_dim_oracle, pairing_explicit, q_value};

pub const BRUTE_BOUND: i64 = 6;

/// Positive roots by closure agree with a scan of `{0..6}^n`, and no root
/// touches the edge of the box.
pub fn roots_match_box_scan(q: &UnitForm) -> Result<usize, String> {
    let brute = brute_positive_roots(q, BRUTE_BOUND);
    let lib: BTreeSet<Vec<i64>> = roots::positive_roots(q, roots::DEFAULT_ROOT_CAP)
        .map_err(|e| e.to_string())?
        .roots()
        .iter()
        .map(|r| r.entries().to_vec())
        .collect();
    if lib != brute {
        let missing: Vec<_> = brute.difference(&lib).collect();
        let extra: Vec<_> = lib.difference(&brute).collect();
        return Err(format!("{q}: missing {missing:?}, extra {extra:?}"));
    }
    if brute.iter().any(|r| r.contains(&BRUTE_BOUND)) {
        return Err(format!("{q}: a root reaches the box edge {BRUTE_BOUND}"));
    }
    Ok(brute.len())
}

/// Every degree with at most three letters and total degree at most five.
pub fn small_degrees() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for e in super::degrees_up_to(n, 5) {
            out.push(e);
        }
    }
    out
}

pub fn free_lie_dims_match() -> Result<usize, String> {
    let degrees = small_degrees();
    for e in &degrees {
        let lib = free_lie::free_lie_dim(&IntVector::new(e.clone()));
        let oracle = free_lie_dim_oracle(e) as u64;
        if lib != oracle {
            return Err(format!("degree {e:?}: witt formula {lib}, rank oracle {oracle}"));
        }
    }
    Ok(degrees.len())
}

fn random_vector(rng: &mut StdRng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-20..=20)).collect()
}

/// The pairing from `q(x+y) - q(x) - q(y)` agrees with the explicit formula,
/// on `samples` random pairs.
pub fn pairing_formulas_agree(q: &UnitForm, samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = q.n();
    for _ in 0..samples {
        let x = random_vector(&mut rng, n);
        let y = random_vector(&mut rng, n);
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let polarized = q_value(q, &sum) - q_value(q, &x) - q_value(q, &y);
        let explicit = pairing_explicit(q, &x, &y);
        let lib = form::pairing(q, &IntVector::new(x.clone()), &IntVector::new(y.clone())).map_err(|e| e.to_string())?;
        if polarized != explicit || lib != explicit {
            return Err(format!("{q}: x={x:?} y={y:?}: polarized {polarized}, explicit {explicit}, library {lib}"));
        }
        let i = rng.gen_range(0..n);
        let unit = form::pairing_unit(q, i, &IntVector::new(x.clone())).map_err(|e| e.to_string())?;
        let mut e = vec![0; n];
        e[i] = 1;
        if unit != pairing_explicit(q, &e, &x) {
            return Err(format!("{q}: <e_{}, {x:?}> = {unit}", i + 1));
        }
        if form::evaluate(q, &IntVector::new(x.clone())).map_err(|e| e.to_string())? != q_value(q, &x) {
            return Err(format!("{q}: q({x:?}) disagrees"));
        }
    }
    Ok(())
}

/// For positive roots `x, y`: `x + y` is a root iff `<x, y> = -1`; and the
/// bounds on `<e_i, x>` for weakly positive and positive definite forms.
pub fn root_pairing_lemmas(q: &UnitForm) -> Result<usize, String> {
    let roots: Vec<Vec<i64>> = brute_positive_roots(q, BRUTE_BOUND).into_iter().collect();
    let definite = form::is_positive_definite(q);
    let n = q.n();
    let mut pairs = 0;
    for x in &roots {
        for y in &roots {
            let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            let is_root = q_value(q, &sum) == 1;
            let p = form::pairing(q, &IntVector::new(x.clone()), &IntVector::new(y.clone())).map_err(|e| e.to_string())?;
            if is_root != (p == -1) {
                return Err(format!("{q}: x={x:?} y={y:?}: <x,y>={p} but x+y root = {is_root}"));
            }
            pairs += 1;
        }
        for i in 0..n {
            let p = form::pairing_unit(q, i, &IntVector::new(x.clone())).map_err(|e| e.to_string())?;
            if p < -1 {
                return Err(format!("{q}: <e_{}, {x:?}> = {p} < -1", i + 1));
            }
            let is_unit = x.iter().enumerate().all(|(j, &k)| k == i64::from(j == i));
            if definite && !is_unit && p > 1 {
                return Err(format!("{q}: <e_{}, {x:?}> = {p} > 1 on a definite form", i + 1));
            }
        }
    }
    Ok(pairs)
}

fn random_bracket(rng: &mut StdRng, n: usize) -> Multibracket {
    let len = rng.gen_range(1..=4);
    Multibracket::new((0..len).map(|_| rng.gen_range(0..n)).collect())
}

fn to_oracle(p: &TensorPoly) -> super::Poly {
    p.terms()
        .iter()
        .map(|(w, c)| (w.iter().map(|&l| l as usize).collect(), i64::try_from(c.clone()).expect("small coefficient")))
        .collect()
}

/// Expansion agrees with an independent word expansion, and the bracket of
/// expanded elements is antisymmetric and satisfies the Jacobi identity.
pub fn bracket_identities(n: usize, samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let [u, v, w] = [(); 3].map(|_| random_bracket(&mut rng, n));
        let [a, b, c] = [&u, &v, &w].map(|m| free_lie::expand(m, n));
        for (m, p) in [(&u, &a), (&v, &b), (&w, &c)] {
            if to_oracle(p) != expand_word(m.indices()) {
                return Err(format!("expansion of {m} disagrees with the word oracle"));
            }
        }
        let scaled = |p: &TensorPoly, k: i64| {
            TensorPoly::from_terms(p.degree().clone(), p.terms().iter().map(|(w, x)| (w.clone(), x * BigInt::from(k))))
        };
        let x = a.add(&scaled(&a, rng.gen_range(-3..=3)));
        if !x.bracket(&b).add(&b.bracket(&x)).is_zero() {
            return Err(format!("antisymmetry fails for {u}, {v}"));
        }
        let jacobi = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
        if !jacobi.is_zero() {
            return Err(format!("Jacobi fails for {u}, {v}, {w}"));
        }
    }
    Ok(())
}

pub fn fixture_forms() -> Vec<(&'static str, UnitForm)> {
    fixtures::all_forms()
}
