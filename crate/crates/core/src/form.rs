//! Unit integral quadratic forms and their bigraphs.
//!
//! A form in `n` variables is stored through its off-diagonal coefficients
//! `a_ij` (for `i < j`); the diagonal coefficients are always 1:
//!
//! ```text
//! q(x) = sum_i x(i)^2 + sum_{i<j} a_ij x(i) x(j)
//! ```
//!
//! Indices are 0-based in the Rust API. The text and JSON formats and the
//! constructors taking coefficient triples use 1-based indices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots;

/// Default box bound used by [`is_weakly_positive`].
pub const DEFAULT_BOX_BOUND: u32 = 12;

/// Largest number of box points [`is_weakly_positive`] is willing to visit.
const BOX_POINT_LIMIT: u128 = 50_000_000;

/// An element of `Z^n`. Used both for candidate roots and for multidegrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    /// All entries nonnegative and at least one positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&v| v >= 0) && self.0.iter().any(|&v| v > 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }

    /// Coordinate sum.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `Some(i)` when the vector is the unit vector `e_i`.
    pub fn unit_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &v) in self.0.iter().enumerate() {
            match v {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn with_added(&self, i: usize, delta: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += delta;
        IntVector(v)
    }

    pub fn scaled(&self, factor: i64) -> Self {
        IntVector(self.0.iter().map(|v| v * factor).collect())
    }
}

impl Index<usize> for IntVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;

    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;

    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A unit integral quadratic form.
///
/// Coefficients are arbitrary integers; [`UnitForm::is_strict_unit`] reports
/// whether they all lie in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitForm {
    n: usize,
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl UnitForm {
    /// The form `x(1)^2 + ... + x(n)^2` with no edges.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidForm("a form needs at least one variable".into()));
        }
        Ok(UnitForm { n, coeffs: BTreeMap::new() })
    }

    /// Builds a form from 1-based triples `(i, j, a_ij)`, `i != j`.
    /// Zero coefficients are ignored; a repeated pair is an error.
    pub fn from_coefficients(n: usize, triples: &[(usize, usize, i64)]) -> Result<Self> {
        let mut form = UnitForm::new(n)?;
        for &(i, j, a) in triples {
            form.set_one_based(i, j, a)?;
        }
        Ok(form)
    }

    fn set_one_based(&mut self, i: usize, j: usize, a: i64) -> Result<()> {
        let key = self.pair_key(i, j)?;
        if self.coeffs.contains_key(&key) {
            return Err(Error::InvalidForm(format!("coefficient a_{{{i},{j}}} given twice")));
        }
        if a != 0 {
            self.coeffs.insert(key, a);
        }
        Ok(())
    }

    fn pair_key(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        for idx in [i, j] {
            if idx == 0 || idx > self.n {
                return Err(Error::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        if i == j {
            return Err(Error::InvalidForm(format!(
                "diagonal coefficient a_{{{i},{i}}} cannot be set on a unit form"
            )));
        }
        Ok((i.min(j) - 1, i.max(j) - 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Off-diagonal coefficient `a_ij` for 0-based `i != j`; 0 when absent.
    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        *self.coeffs.get(&(i.min(j), i.max(j))).unwrap_or(&0)
    }

    /// Nonzero coefficients as 0-based `((i, j), a_ij)` with `i < j`.
    pub fn coefficients(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_strict_unit(&self) -> bool {
        self.coeffs.values().all(|a| (-1..=1).contains(a))
    }

    /// `<e_i, e_j>_q`: 2 on the diagonal, `a_ij` off it.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else {
            self.coeff(i, j)
        }
    }

    /// Whether `a_ij != 0`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.coeff(i, j) != 0
    }

    fn check_len(&self, x: &IntVector) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok(())
    }

    /// 1-based coefficient triples, sorted lexicographically.
    pub fn to_triples(&self) -> Vec<(usize, usize, i64)> {
        self.coeffs.iter().map(|(&(i, j), &a)| (i + 1, j + 1, a)).collect()
    }

    /// Serializes into the line-oriented `.qform` text format.
    pub fn to_qform(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (i, j, a) in self.to_triples() {
            out.push_str(&format!("a {i} {j} {a}\n"));
        }
        out
    }

    /// Parses the `.qform` text format. See [`UnitForm::to_qform`].
    pub fn parse_qform(text: &str) -> Result<Self> {
        #[derive(PartialEq, Clone, Copy)]
        enum Syntax {
            Coefficient,
            Edge,
        }
        let mut form: Option<UnitForm> = None;
        let mut syntax: Option<Syntax> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(current) = form.as_mut() else {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(err(format!("expected `n <integer>`, found `{line}`")));
                }
                let n: usize = fields[1]
                    .parse()
                    .map_err(|_| err(format!("invalid variable count `{}`", fields[1])))?;
                form = Some(UnitForm::new(n).map_err(|e| err(e.to_string()))?);
                continue;
            };
            let this = match fields[0] {
                "a" => Syntax::Coefficient,
                "edge" => Syntax::Edge,
                "n" => return Err(err("variable count given twice".into())),
                other => return Err(err(format!("unknown directive `{other}`"))),
            };
            if *syntax.get_or_insert(this) != this {
                return Err(err("coefficient and edge syntax cannot be mixed".into()));
            }
            let index = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| err(format!("invalid index `{s}`")))
            };
            let (i, j, a) = match this {
                Syntax::Coefficient => {
                    if fields.len() != 4 {
                        return Err(err("expected `a <i> <j> <value>`".into()));
                    }
                    let a: i64 = fields[3]
                        .parse()
                        .map_err(|_| err(format!("invalid coefficient `{}`", fields[3])))?;
                    (index(fields[1])?, index(fields[2])?, a)
                }
                Syntax::Edge => {
                    if !(4..=5).contains(&fields.len()) {
                        return Err(err("expected `edge <i> <j> solid|broken [multiplicity]`".into()));
                    }
                    let mult: i64 = match fields.get(4) {
                        Some(m) => m
                            .parse()
                            .ok()
                            .filter(|&m: &i64| m > 0)
                            .ok_or_else(|| err(format!("invalid multiplicity `{m}`")))?,
                        None => 1,
                    };
                    let sign = match fields[3] {
                        "solid" => -1,
                        "broken" => 1,
                        other => return Err(err(format!("unknown edge kind `{other}`"))),
                    };
                    (index(fields[1])?, index(fields[2])?, sign * mult)
                }
            };
            current.set_one_based(i, j, a).map_err(|e| err(e.to_string()))?;
        }
        form.ok_or(Error::Parse { line: 0, message: "empty input, expected `n <integer>`".into() })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("form serialization is infallible")
    }
}

impl FromStr for UnitForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UnitForm::parse_qform(s)
    }
}

impl fmt::Display for UnitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q(n={}", self.n)?;
        for (i, j, a) in self.to_triples() {
            write!(f, ", a{i}{j}={a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    coefficients: Vec<(usize, usize, i64)>,
}

impl Serialize for UnitForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson { n: self.n, coefficients: self.to_triples() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FormJson::deserialize(d)?;
        UnitForm::from_coefficients(raw.n, &raw.coefficients).map_err(serde::de::Error::custom)
    }
}

/// `q(x)`, computed exactly.
pub fn evaluate(q: &UnitForm, x: &IntVector) -> Result<i64> {
    q.check_len(x)?;
    let mut acc: i128 = 0;
    for &v in x.entries() {
        acc = acc.checked_add(i128::from(v) * i128::from(v)).ok_or(Error::Overflow)?;
    }
    for ((i, j), a) in q.coefficients() {
        let term = i128::from(x[i])
            .checked_mul(i128::from(x[j]))
            .and_then(|t| t.checked_mul(i128::from(a)))
            .ok_or(Error::Overflow)?;
        acc = acc.checked_add(term).ok_or(Error::Overflow)?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow)
}

/// The symmetric bilinear form `<x, y>_q = q(x + y) - q(x) - q(y)`.
pub fn pairing(q: &UnitForm, x: &IntVector, y: &IntVector) -> Result<i64> {
    q.check_len(x)?;
    q.check_len(y)?;
    let sum = IntVector(
        x.entries()
            .iter()
            .zip(y.entries())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?,
    );
    let value = i128::from(evaluate(q, &sum)?) - i128::from(evaluate(q, x)?) - i128::from(evaluate(q, y)?);
    i64::try_from(value).map_err(|_| Error::Overflow)
}

/// `<e_i, x>_q = 2 x(i) + sum_{j != i} a_ij x(j)` for 0-based `i`.
pub fn pairing_unit(q: &UnitForm, i: usize, x: &IntVector) -> Result<i64> {
    if i >= q.n {
        return Err(Error::IndexOutOfRange { index: i, n: q.n });
    }
    q.check_len(x)?;
    let mut acc = i128::from(x[i]) * 2;
    for j in (0..q.n).filter(|&j| j != i) {
        acc += i128::from(q.coeff(i, j)) * i128::from(x[j]);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow)
}

/// Pairing of a unit vector with a vector already known to have the right length.
pub(crate) fn pairing_unit_unchecked(q: &UnitForm, i: usize, x: &IntVector) -> i64 {
    let mut acc = 2 * x[i];
    for j in (0..q.n).filter(|&j| j != i) {
        acc += q.coeff(i, j) * x[j];
    }
    acc
}

pub fn is_root(q: &UnitForm, x: &IntVector) -> Result<bool> {
    Ok(evaluate(q, x)? == 1)
}

/// Symmetric integer matrix `(<e_i, e_j>_q)`.
pub fn cartan_matrix(q: &UnitForm) -> Vec<Vec<i64>> {
    (0..q.n).map(|i| (0..q.n).map(|j| q.cartan_entry(i, j)).collect()).collect()
}

/// Leading principal minors of the Cartan matrix, by Bareiss elimination.
///
/// Stops after the first minor that is not positive; the returned vector then
/// ends with that minor.
pub fn leading_minors(q: &UnitForm) -> Vec<BigInt> {
    let n = q.n;
    let mut m: Vec<Vec<BigInt>> =
        cartan_matrix(q).into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        // m[k][k] is now the (k+1)-th leading principal minor.
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if !pivot.is_positive() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&pivot * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
        }
        prev = pivot;
    }
    minors
}

/// Positive definiteness of `q`, decided by the signs of the leading
/// principal minors of its Cartan matrix.
pub fn is_positive_definite(q: &UnitForm) -> bool {
    let minors = leading_minors(q);
    minors.len() == q.n && minors.iter().all(|m| m.is_positive() && !m.is_zero())
}

/// Outcome of the weak-positivity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum WeakPositivity {
    WeaklyPositive,
    /// A positive vector `x` with `q(x) <= 0`.
    NotWeaklyPositive(IntVector),
    Inconclusive,
}

/// Three-valued weak-positivity test.
///
/// Positive definite forms are accepted immediately. Otherwise the box
/// `{0..bound}^n` is searched for a positive vector with `q(x) <= 0`; the
/// first one found (least height, then lexicographic) is returned as a
/// certificate. The form is reported weakly positive only if the box holds no
/// such vector and the positive-root completion closes inside the box.
pub fn is_weakly_positive(q: &UnitForm, bound: u32) -> WeakPositivity {
    if is_positive_definite(q) {
        return WeakPositivity::WeaklyPositive;
    }
    let points = u128::from(bound + 1).checked_pow(q.n as u32);
    if points.is_none_or(|p| p > BOX_POINT_LIMIT) {
        return WeakPositivity::Inconclusive;
    }
    if let Some(witness) = box_counterexample(q, bound) {
        return WeakPositivity::NotWeaklyPositive(witness);
    }
    match roots::positive_roots(q, roots::DEFAULT_ROOT_CAP) {
        Ok(set) if set.roots().iter().all(|r| r.entries().iter().all(|&v| v <= i64::from(bound))) => {
            WeakPositivity::WeaklyPositive
        }
        _ => WeakPositivity::Inconclusive,
    }
}

fn box_counterexample(q: &UnitForm, bound: u32) -> Option<IntVector> {
    let n = q.n;
    let bound = i64::from(bound);
    let mut x = vec![0i64; n];
    for height in 1..=bound * n as i64 {
        if let Some(found) = compositions(q, &mut x, 0, height, bound) {
            return Some(found);
        }
    }
    None
}

// Visits the vectors of the given height with entries in 0..=bound in
// lexicographically decreasing order of the leading coordinates.
fn compositions(q: &UnitForm, x: &mut [i64], pos: usize, remaining: i64, bound: i64) -> Option<IntVector> {
    let n = x.len();
    if pos == n - 1 {
        if remaining > bound {
            return None;
        }
        x[pos] = remaining;
        let v = IntVector(x.to_vec());
        return match evaluate(q, &v) {
            Ok(value) if value <= 0 => Some(v),
            _ => None,
        };
    }
    let rest_capacity = bound * (n - pos - 1) as i64;
    let lo = (remaining - rest_capacity).max(0);
    for value in lo..=remaining.min(bound) {
        x[pos] = value;
        if let Some(found) = compositions(q, x, pos + 1, remaining - value, bound) {
            return Some(found);
        }
    }
    None
}

/// Whether the graph of nonzero coefficients is connected.
pub fn is_connected(q: &UnitForm) -> bool {
    let mut seen = vec![false; q.n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for (w, s) in seen.iter_mut().enumerate() {
            if !*s && q.adjacent(v, w) {
                *s = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The bigraph of a form: solid edges for negative coefficients, broken edges
/// for positive ones, each with multiplicity `|a_ij|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    n: usize,
    solid: BTreeMap<(usize, usize), u64>,
    broken: BTreeMap<(usize, usize), u64>,
}

impl Bigraph {
    /// Builds a bigraph from 0-based edge lists with multiplicities.
    pub fn new(
        n: usize,
        solid: impl IntoIterator<Item = ((usize, usize), u64)>,
        broken: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<Self> {
        let mut graph = Bigraph { n, solid: BTreeMap::new(), broken: BTreeMap::new() };
        for (is_solid, edges) in [(true, solid.into_iter().collect::<Vec<_>>()), (false, broken.into_iter().collect())] {
            for ((i, j), mult) in edges {
                if i >= n || j >= n || i == j {
                    return Err(Error::InvalidForm(format!("invalid edge ({}, {})", i + 1, j + 1)));
                }
                if mult == 0 {
                    continue;
                }
                let key = (i.min(j), i.max(j));
                if graph.solid.contains_key(&key) || graph.broken.contains_key(&key) {
                    return Err(Error::InvalidForm(format!("edge ({}, {}) given twice", key.0 + 1, key.1 + 1)));
                }
                if is_solid {
                    graph.solid.insert(key, mult);
                } else {
                    graph.broken.insert(key, mult);
                }
            }
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solid_edges(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.solid
    }

    pub fn broken_edges(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.broken
    }

    /// Total number of solid edges counted with multiplicity.
    pub fn solid_count(&self) -> u64 {
        self.solid.values().sum()
    }

    pub fn broken_count(&self) -> u64 {
        self.broken.values().sum()
    }

    /// Graphviz rendering: solid edges plain, broken edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph B {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {};\n", v + 1));
        }
        for (style, edges) in [("solid", &self.solid), ("dashed", &self.broken)] {
            for (&(i, j), &mult) in edges {
                for _ in 0..mult {
                    out.push_str(&format!("  {} -- {} [style={style}];\n", i + 1, j + 1));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn bigraph(q: &UnitForm) -> Bigraph {
    let mut solid = BTreeMap::new();
    let mut broken = BTreeMap::new();
    for (key, a) in q.coefficients() {
        if a < 0 {
            solid.insert(key, a.unsigned_abs());
        } else {
            broken.insert(key, a.unsigned_abs());
        }
    }
    Bigraph { n: q.n, solid, broken }
}

pub fn from_bigraph(b: &Bigraph) -> UnitForm {
    let mut coeffs = BTreeMap::new();
    for (&key, &mult) in &b.solid {
        coeffs.insert(key, -(mult as i64));
    }
    for (&key, &mult) in &b.broken {
        coeffs.insert(key, mult as i64);
    }
    UnitForm { n: b.n, coeffs }
}
