//! Positive roots, Weyl chains and root sequences of weakly positive forms.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{self, IntVector, UnitForm};
use crate::free_lie::Multibracket;

pub const DEFAULT_ROOT_CAP: usize = 10_000;
pub const DEFAULT_SEQUENCE_CAP: usize = 100_000;

/// The positive roots of a form, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    form: UnitForm,
    roots: BTreeSet<IntVector>,
    max_height: u32,
}

impl RootSet {
    pub fn form(&self) -> &UnitForm {
        &self.form
    }

    pub fn roots(&self) -> &BTreeSet<IntVector> {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.roots.contains(x)
    }

    /// Largest coordinate sum of a positive root.
    pub fn max_height(&self) -> u32 {
        self.max_height
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            roots: Vec<&'a [i64]>,
            count: usize,
            max_height: u32,
        }
        serde_json::to_value(Out {
            roots: self.roots.iter().map(IntVector::entries).collect(),
            count: self.roots.len(),
            max_height: self.max_height,
        })
        .expect("root set serialization is infallible")
    }
}

/// Closes `{e_1, ..., e_n}` under `x -> x + e_i` whenever `<e_i, x>_q = -1`.
///
/// For a weakly positive form this is exactly the set of positive roots.
/// Fails with [`Error::RootBudgetExceeded`] once more than `cap` roots exist.
pub fn positive_roots(q: &UnitForm, cap: usize) -> Result<RootSet> {
    let n = q.n();
    let mut roots = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let e = IntVector::unit(n, i);
        roots.insert(e.clone());
        queue.push_back(e);
    }
    if roots.len() > cap {
        return Err(Error::RootBudgetExceeded { cap });
    }
    while let Some(x) = queue.pop_front() {
        for i in 0..n {
            if form::pairing_unit_unchecked(q, i, &x) == -1 {
                let y = x.with_added(i, 1);
                if roots.insert(y.clone()) {
                    if roots.len() > cap {
                        return Err(Error::RootBudgetExceeded { cap });
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    let max_height = roots.iter().map(|r| r.height()).max().unwrap_or(0) as u32;
    Ok(RootSet { form: q.clone(), roots, max_height })
}

/// A descending chain of positive roots, each step removing one unit vector,
/// from a root down to some `e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeylChain {
    steps: Vec<IntVector>,
}

impl WeylChain {
    pub fn steps(&self) -> &[IntVector] {
        &self.steps
    }

    /// 0-based index removed at each step.
    pub fn removed_indices(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .map(|w| (&w[0] - &w[1]).unit_index().expect("consecutive chain steps differ by a unit vector"))
            .collect()
    }
}

/// Builds a Weyl chain for `z`, always removing the smallest index `i` with
/// `<e_i, x>_q = 1` (which makes `x - e_i` a root).
pub fn weyl_chain(q: &UnitForm, z: &IntVector) -> Result<WeylChain> {
    if !z.is_positive() || !form::is_root(q, z)? {
        return Err(Error::NotARoot(z.to_string()));
    }
    let mut steps = vec![z.clone()];
    let mut x = z.clone();
    while x.unit_index().is_none() {
        let i = (0..q.n())
            .find(|&i| x[i] > 0 && form::pairing_unit_unchecked(q, i, &x) == 1)
            .ok_or_else(|| Error::NoDescent(x.to_string()))?;
        x = x.with_added(i, -1);
        steps.push(x.clone());
    }
    Ok(WeylChain { steps })
}

/// All index sequences `(i_1, ..., i_m)` whose right-normed multibracket is
/// a root: every head pairs to `-1` with the sum of the unit vectors after it.
///
/// Returned in (length, lexicographic) order.
pub fn root_sequences(q: &UnitForm, cap: usize) -> Result<Vec<Multibracket>> {
    let n = q.n();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Multibracket, IntVector)> = Vec::new();
    for i in 0..n {
        stack.push((Multibracket::single(i), IntVector::unit(n, i)));
    }
    while let Some((word, degree)) = stack.pop() {
        for i in 0..n {
            if form::pairing_unit_unchecked(q, i, &degree) == -1 {
                stack.push((word.with_head(i), degree.with_added(i, 1)));
            }
        }
        out.insert(word);
        if out.len() > cap {
            return Err(Error::SequenceBudgetExceeded { cap });
        }
    }
    Ok(out.into_iter().collect())
}
