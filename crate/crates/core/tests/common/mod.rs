// Independent reference computations. Nothing here calls into the library's
// arithmetic: values are recomputed from the coefficient table by brute force.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use liequad::UnitForm;

pub type Poly = BTreeMap<Vec<usize>, i64>;

fn coefficient_table(q: &UnitForm) -> Vec<Vec<i64>> {
    let n = q.n();
    let mut a = vec![vec![0; n]; n];
    for ((i, j), v) in q.coefficients() {
        a[i][j] = v;
        a[j][i] = v;
    }
    a
}

/// `q(x) = sum x_i^2 + sum_{i<j} a_ij x_i x_j`.
pub fn q_value(q: &UnitForm, x: &[i64]) -> i64 {
    let a = coefficient_table(q);
    let mut total = 0;
    for i in 0..x.len() {
        total += x[i] * x[i];
        for j in i + 1..x.len() {
            total += a[i][j] * x[i] * x[j];
        }
    }
    total
}

/// `<x, y> = sum_i y_i (2 x_i + sum_{j != i} a_ij x_j)`.
pub fn pairing_explicit(q: &UnitForm, x: &[i64], y: &[i64]) -> i64 {
    let a = coefficient_table(q);
    (0..x.len())
        .map(|i| {
            let row: i64 = 2 * x[i] + (0..x.len()).filter(|&j| j != i).map(|j| a[i][j] * x[j]).sum::<i64>();
            y[i] * row
        })
        .sum()
}

/// Every vector in `{0..bound}^n`, zero excluded.
pub fn box_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..=bound).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&k| k != 0));
    out
}

/// Positive roots found by scanning the box `{0..bound}^n`.
pub fn brute_positive_roots(q: &UnitForm, bound: i64) -> BTreeSet<Vec<i64>> {
    box_vectors(q.n(), bound).into_iter().filter(|x| q_value(q, x) == 1).collect()
}

pub fn add_into(target: &mut Poly, source: &Poly, factor: i64) {
    for (w, c) in source {
        let entry = target.entry(w.clone()).or_insert(0);
        *entry += factor * c;
        if *entry == 0 {
            target.remove(w);
        }
    }
}

/// `[v_i, p] = v_i p - p v_i` on words.
pub fn bracket_letter(i: usize, p: &Poly) -> Poly {
    bracket(&letter(i), p)
}

pub fn letter(i: usize) -> Poly {
    BTreeMap::from([(vec![i], 1)])
}

pub fn bracket(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (w, y) in b {
            add_into(&mut out, &BTreeMap::from([([u.clone(), w.clone()].concat(), x * y)]), 1);
            add_into(&mut out, &BTreeMap::from([([w.clone(), u.clone()].concat(), x * y)]), -1);
        }
    }
    out
}

/// Expansion of the right-normed bracket of 0-based letters.
pub fn expand_word(word: &[usize]) -> Poly {
    let (&last, rest) = word.split_last().expect("nonempty word");
    rest.iter().rev().fold(letter(last), |acc, &i| bracket_letter(i, &acc))
}

/// Distinct arrangements of the multiset with `e[i]` copies of letter `i`.
pub fn arrangements(e: &[i64]) -> Vec<Vec<usize>> {
    let total: i64 = e.iter().sum();
    let mut out = Vec::new();
    let mut counts = e.to_vec();
    let mut word = Vec::new();
    fn go(counts: &mut [i64], word: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == total {
            out.push(word.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                word.push(i);
                go(counts, word, total, out);
                word.pop();
                counts[i] += 1;
            }
        }
    }
    go(&mut counts, &mut word, total as usize, &mut out);
    out
}

/// Rank over Q of a list of sparse polynomials, by dense Gaussian elimination
/// on rationals.
pub fn rank(polys: &[Poly]) -> usize {
    let columns: BTreeSet<&Vec<usize>> = polys.iter().flat_map(|p| p.keys()).collect();
    let index: BTreeMap<&Vec<usize>, usize> = columns.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let mut rows: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::zero(); index.len()];
            for (w, c) in p {
                row[index[w]] = BigRational::from_integer(BigInt::from(*c));
            }
            row
        })
        .collect();
    let mut r = 0;
    for col in 0..index.len() {
        let Some(pivot) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = BigRational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][col].is_zero() {
                let f = rows[k][col].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[k].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the free Lie algebra component of degree `e`: the rank of
/// all right-normed brackets with that letter content.
pub fn free_lie_dim_oracle(e: &[i64]) -> usize {
    let polys: Vec<Poly> = arrangements(e).iter().map(|w| expand_word(w)).collect();
    rank(&polys)
}

/// Dimension of `L / (S)` in degree `e`, with `(S)_e` spanned by all
/// `[v_{i1}, [v_{i2}, ..., [v_{ik}, s]]]` for generators `s` (0-based words).
pub fn quotient_dim_oracle(e: &[i64], generators: &[Vec<usize>]) -> usize {
    let free = free_lie_dim_oracle(e);
    let mut span = Vec::new();
    for s in generators {
        let mut rest = e.to_vec();
        for &i in s {
            rest[i] -= 1;
        }
        if rest.iter().any(|&k| k < 0) {
            continue;
        }
        let base = expand_word(s);
        if base.is_empty() {
            continue;
        }
        for prefix in arrangements(&rest) {
            let p = prefix.iter().rev().fold(base.clone(), |acc, &i| bracket_letter(i, &acc));
            if !p.is_empty() {
                span.push(p);
            }
        }
    }
    free - rank(&span)
}

/// Every nonzero degree in `N^n` of total height `1..=h`.
pub fn degrees_up_to(n: usize, h: i64) -> Vec<Vec<i64>> {
    box_vectors(n, h).into_iter().filter(|x| x.iter().sum::<i64>() <= h).collect()
}
pub mod suites;
