//! The free Lie algebra on `n` generators, modelled inside the tensor algebra.
//!
//! A Lie element is represented by its image under `[a, b] -> ab - ba`: a
//! homogeneous polynomial in noncommuting words ([`TensorPoly`]). Linear
//! questions about Lie elements become exact rank questions over words.

mod echelon;
mod ideal;
mod scalar;
mod witt;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::form::IntVector;

pub use echelon::{Echelon, SparseRow};
pub(crate) use ideal::lie_algebra_with_cache;
pub use ideal::{ideal_component, ideal_contains, lie_algebra, quotient_dim, GradedDims, IdealCache};
pub use scalar::{Overflow, Scalar};
pub use witt::free_lie_dim;

/// A word in the generators (0-based letters).
pub type Word = Vec<u16>;

/// The right-normed bracket `[v_{i1}, [v_{i2}, [..., v_{im}]]]`.
///
/// Indices are 0-based internally; [`Multibracket::from_one_based`],
/// [`Multibracket::to_one_based`], `Display` and serde use 1-based indices.
/// Ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multibracket {
    indices: Vec<usize>,
}

impl Multibracket {
    /// # Panics
    /// If `indices` is empty.
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(!indices.is_empty(), "a multibracket needs at least one generator");
        Multibracket { indices }
    }

    pub fn single(i: usize) -> Self {
        Multibracket { indices: vec![i] }
    }

    /// Returns `None` for an empty sequence or a zero index.
    pub fn from_one_based(indices: &[usize]) -> Option<Self> {
        if indices.is_empty() || indices.contains(&0) {
            return None;
        }
        Some(Multibracket { indices: indices.iter().map(|i| i - 1).collect() })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    /// Number of generators, `l(v)`.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn head(&self) -> usize {
        self.indices[0]
    }

    /// The bracket without its head, if any generators remain.
    pub fn tail(&self) -> Option<Multibracket> {
        (self.indices.len() > 1).then(|| Multibracket { indices: self.indices[1..].to_vec() })
    }

    /// `[v_i, self]`.
    pub fn with_head(&self, i: usize) -> Multibracket {
        let mut indices = Vec::with_capacity(self.indices.len() + 1);
        indices.push(i);
        indices.extend_from_slice(&self.indices);
        Multibracket { indices }
    }

    /// Multidegree `e_v` in `n` variables.
    pub fn degree(&self, n: usize) -> IntVector {
        let mut d = vec![0i64; n];
        for &i in &self.indices {
            d[i] += 1;
        }
        IntVector::new(d)
    }

    pub fn max_index(&self) -> usize {
        *self.indices.iter().max().expect("nonempty")
    }

    /// Parses `"1,2,4"` (1-based, commas and/or whitespace).
    pub fn parse_one_based(text: &str) -> Option<Self> {
        let parts: Option<Vec<usize>> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().ok())
            .collect();
        Multibracket::from_one_based(&parts?)
    }
}

impl PartialOrd for Multibracket {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multibracket {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices.len().cmp(&other.indices.len()).then_with(|| self.indices.cmp(&other.indices))
    }
}

impl fmt::Display for Multibracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "v{}", i + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Multibracket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multibracket {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        Multibracket::from_one_based(&raw)
            .ok_or_else(|| serde::de::Error::custom("multibracket indices must be nonempty and 1-based"))
    }
}

/// A homogeneous element of the tensor algebra with integer coefficients.
///
/// Every word has letter content equal to `degree`; no zero coefficient is
/// stored. All Lie elements built from generators have integral expansions,
/// and spans are taken over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorPoly<T = BigInt> {
    degree: IntVector,
    terms: BTreeMap<Word, T>,
}

impl<T: Scalar> TensorPoly<T> {
    pub fn zero(degree: IntVector) -> Self {
        TensorPoly { degree, terms: BTreeMap::new() }
    }

    /// The generator `v_i` in `n` variables.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i as u16], T::from_i64(1));
        TensorPoly { degree: IntVector::unit(n, i), terms }
    }

    /// Builds a polynomial from explicit terms; zero coefficients are dropped.
    ///
    /// # Panics
    /// If a word's letter content differs from `degree`.
    pub fn from_terms(degree: IntVector, terms: impl IntoIterator<Item = (Word, T)>) -> Self {
        let mut poly = TensorPoly::zero(degree);
        for (word, c) in terms {
            assert_eq!(word_degree(&word, poly.degree.len()), poly.degree, "word content must match the degree");
            if !c.is_zero() {
                poly.terms.insert(word, c);
            }
        }
        poly
    }

    pub fn degree(&self) -> &IntVector {
        &self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Word, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[u16]) -> T {
        self.terms.get(word).cloned().unwrap_or_else(T::zero)
    }

    fn add_term(terms: &mut BTreeMap<Word, T>, word: Word, c: T) -> Result<(), Overflow> {
        use std::collections::btree_map::Entry;
        match terms.entry(word) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c)?;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.degree, other.degree, "adding polynomials of different degrees");
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            Self::add_term(&mut terms, w.clone(), c.clone())?;
        }
        Ok(TensorPoly { degree: self.degree.clone(), terms })
    }

    pub fn try_scale(&self, factor: &T) -> Result<Self, Overflow> {
        if factor.is_zero() {
            return Ok(TensorPoly::zero(self.degree.clone()));
        }
        let terms = self.terms.iter().map(|(w, c)| Ok((w.clone(), c.mul(factor)?))).collect::<Result<_, Overflow>>()?;
        Ok(TensorPoly { degree: self.degree.clone(), terms })
    }

    pub fn try_neg(&self) -> Result<Self, Overflow> {
        self.try_scale(&T::from_i64(-1))
    }

    /// `[v_i, self] = v_i * self - self * v_i`.
    pub fn try_bracket_generator(&self, i: usize) -> Result<Self, Overflow> {
        let degree = self.degree.with_added(i, 1);
        let mut terms = BTreeMap::new();
        let letter = i as u16;
        for (w, c) in &self.terms {
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(letter);
            left.extend_from_slice(w);
            Self::add_term(&mut terms, left, c.clone())?;
            let mut right = w.clone();
            right.push(letter);
            Self::add_term(&mut terms, right, c.neg()?)?;
        }
        Ok(TensorPoly { degree, terms })
    }

    /// `[self, other] = self * other - other * self`.
    pub fn try_bracket(&self, other: &Self) -> Result<Self, Overflow> {
        let degree = &self.degree + &other.degree;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca.mul(cb)?;
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                Self::add_term(&mut terms, ab, c.clone())?;
                let mut ba = b.clone();
                ba.extend_from_slice(a);
                Self::add_term(&mut terms, ba, c.neg()?)?;
            }
        }
        Ok(TensorPoly { degree, terms })
    }

    pub fn to_bigint(&self) -> TensorPoly<BigInt> {
        TensorPoly {
            degree: self.degree.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.to_bigint())).collect(),
        }
    }
}

impl TensorPoly<BigInt> {
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("BigInt arithmetic does not overflow")
    }

    pub fn neg(&self) -> Self {
        self.try_neg().expect("BigInt arithmetic does not overflow")
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.try_bracket(other).expect("BigInt arithmetic does not overflow")
    }

    pub fn bracket_generator(&self, i: usize) -> Self {
        self.try_bracket_generator(i).expect("BigInt arithmetic does not overflow")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for TensorPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let word: String = w.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(".");
            if k == 0 {
                write!(f, "{c}*{word}")?;
            } else if c.is_negative() {
                write!(f, " - {}*{word}", c.neg().map_err(|_| fmt::Error)?)?;
            } else {
                write!(f, " + {c}*{word}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn word_degree(word: &[u16], n: usize) -> IntVector {
    let mut d = vec![0i64; n];
    for &l in word {
        d[usize::from(l)] += 1;
    }
    IntVector::new(d)
}

/// Tensor-algebra image of a right-normed multibracket in `n` variables.
///
/// # Panics
/// If an index is `>= n`.
pub fn expand(v: &Multibracket, n: usize) -> TensorPoly {
    try_expand::<BigInt>(v, n).expect("BigInt arithmetic does not overflow")
}

pub(crate) fn try_expand<T: Scalar>(v: &Multibracket, n: usize) -> Result<TensorPoly<T>, Overflow> {
    assert!(v.max_index() < n, "multibracket {v} uses a generator beyond v{n}");
    let (&last, rest) = v.indices().split_last().expect("nonempty");
    let mut poly = TensorPoly::<T>::generator(n, last);
    for &i in rest.iter().rev() {
        poly = poly.try_bracket_generator(i)?;
    }
    Ok(poly)
}
