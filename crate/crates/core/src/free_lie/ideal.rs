//! Homogeneous ideals of the free Lie algebra and the graded quotients they
//! define.
//!
//! The ideal generated by a set `S` of homogeneous Lie elements is the span
//! of all `ad(v_{j1}) ... ad(v_{jk}) s` with `s` in `S`, because the algebra is
//! generated in degree one. Its multidegree-`e` component is therefore
//!
//! ```text
//! (S)_e = span{ s in S : deg s = e } + sum_i [v_i, (S)_{e - e_i}]
//! ```
//!
//! which [`IdealCache`] evaluates bottom-up with memoized components.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::echelon::{Echelon, SparseRow};
use super::scalar::{Overflow, Scalar};
use super::witt::free_lie_dim;
use super::{try_expand, Multibracket, TensorPoly, Word};
use crate::error::Result;
use crate::form::{IntVector, UnitForm};
use crate::relations::RelationSet;
use crate::roots;

#[derive(Debug, Clone)]
struct Component<T> {
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    echelon: Echelon<T>,
}

impl<T: Scalar> Component<T> {
    fn new() -> Self {
        Component { words: Vec::new(), index: HashMap::new(), echelon: Echelon::new() }
    }

    fn row_of(&mut self, poly: &TensorPoly<T>) -> SparseRow<T> {
        let mut row: SparseRow<T> = poly
            .terms()
            .iter()
            .map(|(w, c)| {
                let col = match self.index.get(w) {
                    Some(&col) => col,
                    None => {
                        let col = self.words.len() as u32;
                        self.words.push(w.clone());
                        self.index.insert(w.clone(), col);
                        col
                    }
                };
                (col, c.clone())
            })
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        row
    }

    fn insert(&mut self, poly: &TensorPoly<T>) -> Result<bool, Overflow> {
        if poly.is_zero() {
            return Ok(false);
        }
        let row = self.row_of(poly);
        self.echelon.insert(row)
    }

    fn contains(&self, poly: &TensorPoly<T>) -> Result<bool, Overflow> {
        let mut row = Vec::with_capacity(poly.terms().len());
        for (w, c) in poly.terms() {
            match self.index.get(w) {
                Some(&col) => row.push((col, c.clone())),
                // no basis row touches this word
                None => return Ok(false),
            }
        }
        row.sort_unstable_by_key(|e| e.0);
        self.echelon.contains(row)
    }

    fn basis(&self, degree: &IntVector) -> Vec<TensorPoly<T>> {
        self.echelon
            .rows()
            .iter()
            .map(|row| TensorPoly::from_terms(degree.clone(), row.iter().map(|(c, v)| (self.words[*c as usize].clone(), v.clone()))))
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Engine<T> {
    n: usize,
    generators: HashMap<IntVector, Vec<TensorPoly<T>>>,
    components: HashMap<IntVector, Component<T>>,
}

impl<T: Scalar> Engine<T> {
    fn new(n: usize, generators: &[Multibracket]) -> Result<Self, Overflow> {
        let mut by_degree: HashMap<IntVector, Vec<TensorPoly<T>>> = HashMap::new();
        for g in generators {
            let poly = try_expand::<T>(g, n)?;
            if !poly.is_zero() {
                by_degree.entry(poly.degree().clone()).or_default().push(poly);
            }
        }
        Ok(Engine { n, generators: by_degree, components: HashMap::new() })
    }

    fn ensure(&mut self, e: &IntVector) -> Result<(), Overflow> {
        if self.components.contains_key(e) {
            return Ok(());
        }
        let target = free_lie_dim(e) as usize;
        let mut comp = Component::new();
        if target > 0 {
            if let Some(gens) = self.generators.get(e) {
                for g in gens {
                    comp.insert(g)?;
                    if comp.echelon.rank() == target {
                        break;
                    }
                }
            }
            for i in 0..self.n {
                if comp.echelon.rank() == target {
                    break;
                }
                if e[i] == 0 {
                    continue;
                }
                let lower_degree = e.with_added(i, -1);
                self.ensure(&lower_degree)?;
                let lower = &self.components[&lower_degree];
                for poly in lower.basis(&lower_degree) {
                    comp.insert(&poly.try_bracket_generator(i)?)?;
                    if comp.echelon.rank() == target {
                        break;
                    }
                }
            }
        }
        self.components.insert(e.clone(), comp);
        Ok(())
    }

    fn rank(&mut self, e: &IntVector) -> Result<usize, Overflow> {
        self.ensure(e)?;
        Ok(self.components[e].echelon.rank())
    }

    fn contains(&mut self, v: &Multibracket) -> Result<bool, Overflow> {
        let poly = try_expand::<T>(v, self.n)?;
        if poly.is_zero() {
            return Ok(true);
        }
        self.ensure(poly.degree())?;
        self.components[poly.degree()].contains(&poly)
    }

    fn basis(&mut self, e: &IntVector) -> Result<Vec<TensorPoly<BigInt>>, Overflow> {
        self.ensure(e)?;
        Ok(self.components[e].basis(e).iter().map(TensorPoly::to_bigint).collect())
    }
}

#[derive(Debug, Clone)]
enum State {
    Machine(Engine<i64>),
    Wide(Engine<BigInt>),
}

/// Memoized homogeneous components of the ideal generated by a relation set.
///
/// Arithmetic runs on `i64` and transparently restarts on arbitrary-precision
/// integers if a coefficient ever overflows.
#[derive(Debug, Clone)]
pub struct IdealCache {
    n: usize,
    generators: Vec<Multibracket>,
    state: State,
}

macro_rules! dispatch {
    ($self:ident, $engine:ident => $body:expr) => {{
        if let State::Machine($engine) = &mut $self.state {
            match $body {
                Ok(value) => return value,
                Err(Overflow) => $self.widen(),
            }
        }
        match &mut $self.state {
            State::Wide($engine) => $body.expect("BigInt arithmetic does not overflow"),
            State::Machine(_) => unreachable!("widened above"),
        }
    }};
}

impl IdealCache {
    pub fn new(q: &UnitForm, relations: &RelationSet) -> Self {
        Self::from_generators(q.n(), relations.elements().to_vec())
    }

    /// # Panics
    /// If a generator uses an index `>= n`.
    pub fn from_generators(n: usize, generators: Vec<Multibracket>) -> Self {
        let state = match Engine::<i64>::new(n, &generators) {
            Ok(engine) => State::Machine(engine),
            Err(Overflow) => State::Wide(Engine::new(n, &generators).expect("BigInt arithmetic does not overflow")),
        };
        IdealCache { n, generators, state }
    }

    fn widen(&mut self) {
        log::debug!("coefficient overflow in ideal computation, switching to big integers");
        let engine = Engine::<BigInt>::new(self.n, &self.generators).expect("BigInt arithmetic does not overflow");
        self.state = State::Wide(engine);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_degree(&self, e: &IntVector) {
        assert_eq!(e.len(), self.n, "degree length must equal the number of generators");
        assert!(e.is_nonnegative(), "degree {e} has a negative entry");
    }

    /// Dimension of the ideal's component in degree `e`.
    pub fn ideal_dim(&mut self, e: &IntVector) -> usize {
        self.check_degree(e);
        dispatch!(self, engine => engine.rank(e))
    }

    /// Dimension of the quotient's component in degree `e`.
    pub fn quotient_dim(&mut self, e: &IntVector) -> u64 {
        let ideal = self.ideal_dim(e) as u64;
        free_lie_dim(e) - ideal
    }

    /// A basis of the ideal's component in degree `e` (primitive integral rows).
    pub fn basis(&mut self, e: &IntVector) -> Vec<TensorPoly> {
        self.check_degree(e);
        dispatch!(self, engine => engine.basis(e))
    }

    pub fn contains(&mut self, v: &Multibracket) -> bool {
        assert!(v.max_index() < self.n, "multibracket {v} uses a generator beyond v{}", self.n);
        dispatch!(self, engine => engine.contains(v))
    }
}

/// A basis of the degree-`e` component of the ideal held by `cache`.
pub fn ideal_component(cache: &mut IdealCache, e: &IntVector) -> Vec<TensorPoly> {
    cache.basis(e)
}

/// Dimension of the degree-`e` component of `L(q) / (S)`.
pub fn quotient_dim(q: &UnitForm, relations: &RelationSet, e: &IntVector) -> u64 {
    IdealCache::new(q, relations).quotient_dim(e)
}

/// Whether the multibracket `v` lies in the ideal generated by `relations`.
pub fn ideal_contains(q: &UnitForm, relations: &RelationSet, v: &Multibracket) -> bool {
    IdealCache::new(q, relations).contains(v)
}

/// Graded dimensions of a quotient `L(q) / (S)` up to total degree `H + 1`,
/// where `H` is the largest height of a positive root of `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedDims {
    form: UnitForm,
    generators: RelationSet,
    dims: BTreeMap<IntVector, u64>,
    height_bound: u32,
    nilpotency_certified_at: Option<u32>,
}

impl GradedDims {
    pub fn form(&self) -> &UnitForm {
        &self.form
    }

    pub fn generators(&self) -> &RelationSet {
        &self.generators
    }

    /// Every computed degree, zeros included.
    pub fn dims(&self) -> &BTreeMap<IntVector, u64> {
        &self.dims
    }

    /// Quotient dimension at `e`; `None` if `e` lies beyond the computed range.
    pub fn dim(&self, e: &IntVector) -> Option<u64> {
        self.dims.get(e).copied()
    }

    /// Largest total degree computed (`H + 1`).
    pub fn height_bound(&self) -> u32 {
        self.height_bound
    }

    /// `Some(H + 1)` when every component of total degree `H + 1` vanishes,
    /// hence every component above it too.
    pub fn nilpotency_certified_at(&self) -> Option<u32> {
        self.nilpotency_certified_at
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Degrees with nonzero quotient, by total degree then lexicographically.
    pub fn support(&self) -> Vec<(&IntVector, u64)> {
        let mut out: Vec<_> = self.dims.iter().filter(|(_, &d)| d > 0).map(|(e, &d)| (e, d)).collect();
        out.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(b.0)));
        out
    }

    /// `{"dims": [{"degree": [..], "dim": d}, ...], "total": T, "nilpotent_at": h}`
    /// listing the nonzero components; `nilpotent_at` is `null` when not certified.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            degree: &'a [i64],
            dim: u64,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            dims: Vec<Entry<'a>>,
            total: u64,
            nilpotent_at: Option<u32>,
        }
        let dims = self.support().into_iter().map(|(e, dim)| Entry { degree: e.entries(), dim }).collect();
        serde_json::to_value(Out { dims, total: self.total(), nilpotent_at: self.nilpotency_certified_at })
            .expect("graded dimension serialization is infallible")
    }
}

/// Every nonnegative degree in `n` variables with total degree `h`.
pub(crate) fn degrees_of_height(n: usize, h: u32) -> Vec<IntVector> {
    fn go(n: usize, pos: usize, remaining: i64, current: &mut Vec<i64>, out: &mut Vec<IntVector>) {
        if pos == n - 1 {
            current.push(remaining);
            out.push(IntVector::new(current.clone()));
            current.pop();
            return;
        }
        for v in 0..=remaining {
            current.push(v);
            go(n, pos + 1, remaining - v, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, i64::from(h), &mut Vec::with_capacity(n), &mut out);
    out
}

/// Computes the graded quotient `L(q) / (S)` through total degree `H + 1`.
pub fn lie_algebra(q: &UnitForm, relations: &RelationSet) -> Result<GradedDims> {
    let roots = roots::positive_roots(q, roots::DEFAULT_ROOT_CAP)?;
    Ok(lie_algebra_with_cache(q, relations, roots.max_height(), &mut IdealCache::new(q, relations)))
}

pub(crate) fn lie_algebra_with_cache(
    q: &UnitForm,
    relations: &RelationSet,
    max_root_height: u32,
    cache: &mut IdealCache,
) -> GradedDims {
    let bound = max_root_height + 1;
    let mut dims = BTreeMap::new();
    let mut top_vanishes = true;
    for h in 1..=bound {
        for e in degrees_of_height(q.n(), h) {
            let d = cache.quotient_dim(&e);
            if h == bound && d > 0 {
                top_vanishes = false;
            }
            dims.insert(e, d);
        }
    }
    GradedDims {
        form: q.clone(),
        generators: relations.clone(),
        dims,
        height_bound: bound,
        nilpotency_certified_at: top_vanishes.then_some(bound),
    }
}
