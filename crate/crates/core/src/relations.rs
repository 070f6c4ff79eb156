//! Relation sets defining quotients of the free Lie algebra.
//!
//! * `r`: every non-root multibracket whose tail is a root;
//! * `r1`: brackets of non-adjacent generators plus the two Serre-type
//!   relations for each solid edge;
//! * `r0`: the members of `r` whose head pairs to zero with the tail degree;
//! * `p = r1 ∪ r0`;
//! * `r2`: one multibracket per positive chordless cycle;
//! * `j = r1 ∪ r2`.
//!
//! For positive definite forms `r`, `p` and `j` generate the same ideal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::form::{self, UnitForm};
use crate::free_lie::Multibracket;
use crate::roots::{self, DEFAULT_SEQUENCE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    R,
    R0,
    R1,
    R2,
    P,
    J,
    Custom,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::R => "r",
            Tag::R0 => "r0",
            Tag::R1 => "r1",
            Tag::R2 => "r2",
            Tag::P => "p",
            Tag::J => "j",
            Tag::Custom => "custom",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "r" => Tag::R,
            "r0" => Tag::R0,
            "r1" => Tag::R1,
            "r2" => Tag::R2,
            "p" => Tag::P,
            "j" => Tag::J,
            "custom" => Tag::Custom,
            other => return Err(format!("unknown relation set `{other}` (expected r, r0, r1, r2, p, j)")),
        })
    }
}

/// A tagged, duplicate-free list of multibrackets in canonical order
/// (length, then lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSet {
    tag: Tag,
    elements: Vec<Multibracket>,
}

impl RelationSet {
    /// Sorts and deduplicates `elements`.
    pub fn new(tag: Tag, elements: impl IntoIterator<Item = Multibracket>) -> Self {
        let set: BTreeSet<Multibracket> = elements.into_iter().collect();
        RelationSet { tag, elements: set.into_iter().collect() }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn elements(&self) -> &[Multibracket] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &Multibracket) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn union(&self, other: &RelationSet, tag: Tag) -> RelationSet {
        RelationSet::new(tag, self.elements.iter().chain(&other.elements).cloned())
    }

    /// The set with `v` removed, retagged as custom.
    pub fn without(&self, v: &Multibracket) -> RelationSet {
        RelationSet::new(Tag::Custom, self.elements.iter().filter(|&x| x != v).cloned())
    }

    pub fn with(&self, v: Multibracket) -> RelationSet {
        RelationSet::new(Tag::Custom, self.elements.iter().cloned().chain([v]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("relation set serialization is infallible")
    }
}

/// An induced cycle of the bigraph, in canonical orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChordlessCycle {
    vertices: Vec<usize>,
    positive: bool,
}

impl ChordlessCycle {
    /// 0-based vertices in canonical order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v + 1).collect()
    }

    /// Exactly one cyclic edge pairs to `+1` (the closing edge of the
    /// canonical orientation) and all others to `-1`.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn as_multibracket(&self) -> Multibracket {
        Multibracket::new(self.vertices.clone())
    }
}

// Warns once per process and set, since checks regenerate sets many times.
fn warn_if_not_strict(q: &UnitForm, what: &str) {
    static WARNED: std::sync::Mutex<Vec<String>> = std::sync::Mutex::new(Vec::new());
    if q.is_strict_unit() {
        return;
    }
    let mut warned = WARNED.lock().unwrap_or_else(|e| e.into_inner());
    if !warned.iter().any(|w| w == what) {
        warned.push(what.to_string());
        log::warn!("{what}: form has a coefficient outside {{-1, 0, 1}}; using pairing values as given");
    }
}

/// The set `r`: `(i)·w` for every root sequence `w` and head `i` with
/// `<e_i, e_w>_q != -1`.
pub fn gen_r(q: &UnitForm) -> Result<RelationSet> {
    gen_r_with_cap(q, DEFAULT_SEQUENCE_CAP)
}

pub fn gen_r_with_cap(q: &UnitForm, cap: usize) -> Result<RelationSet> {
    let n = q.n();
    let mut out = Vec::new();
    for w in roots::root_sequences(q, cap)? {
        let degree = w.degree(n);
        for i in 0..n {
            if form::pairing_unit_unchecked(q, i, &degree) != -1 {
                out.push(w.with_head(i));
            }
        }
    }
    Ok(RelationSet::new(Tag::R, out))
}

/// The set `r1`: `[v_i, v_j]` for `i < j` with `<e_i, e_j>_q != -1`, and
/// `[v_i, [v_i, v_j]]`, `[v_j, [v_i, v_j]]` when `<e_i, e_j>_q = -1`.
pub fn gen_r1(q: &UnitForm) -> RelationSet {
    warn_if_not_strict(q, "r1");
    let n = q.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if q.cartan_entry(i, j) != -1 {
                out.push(Multibracket::new(vec![i, j]));
            } else {
                out.push(Multibracket::new(vec![i, i, j]));
                out.push(Multibracket::new(vec![j, i, j]));
            }
        }
    }
    RelationSet::new(Tag::R1, out)
}

/// The members of `r` whose head pairs to exactly zero with the tail degree.
pub fn gen_r0(q: &UnitForm) -> Result<RelationSet> {
    Ok(r0_from(q, gen_r(q)?))
}

fn r0_from(q: &UnitForm, r: RelationSet) -> RelationSet {
    let n = q.n();
    let out = r.elements.into_iter().filter(|v| {
        let tail = v.tail().expect("members of r have length at least two");
        form::pairing_unit_unchecked(q, v.head(), &tail.degree(n)) == 0
    });
    RelationSet::new(Tag::R0, out)
}

/// `p = r1 ∪ r0`.
pub fn gen_p(q: &UnitForm) -> Result<RelationSet> {
    Ok(gen_r1(q).union(&gen_r0(q)?, Tag::P))
}

/// Canonical orientation of a cycle: a positive cycle starts at the smaller
/// endpoint of its `+1` edge and ends at the other endpoint; any other cycle
/// starts at its smallest vertex and continues toward the smaller neighbour.
pub fn canonicalize_cycle(q: &UnitForm, cycle: &[usize]) -> ChordlessCycle {
    let m = cycle.len();
    let edge = |k: usize| q.cartan_entry(cycle[k], cycle[(k + 1) % m]);
    let plus: Vec<usize> = (0..m).filter(|&k| edge(k) == 1).collect();
    let positive = m >= 3 && plus.len() == 1 && (0..m).all(|k| plus[0] == k || edge(k) == -1);

    let rotations = |seq: Vec<usize>| -> Vec<Vec<usize>> {
        (0..m).map(|s| (0..m).map(|k| seq[(s + k) % m]).collect()).collect()
    };
    let forward = cycle.to_vec();
    let backward: Vec<usize> = cycle.iter().rev().copied().collect();
    let mut candidates: Vec<Vec<usize>> = rotations(forward).into_iter().chain(rotations(backward)).collect();

    if positive {
        let k = plus[0];
        let (a, b) = (cycle[k].min(cycle[(k + 1) % m]), cycle[k].max(cycle[(k + 1) % m]));
        candidates.retain(|c| c[0] == a && c[m - 1] == b);
    }
    let vertices = candidates.into_iter().min().expect("a cycle has at least one orientation");
    ChordlessCycle { vertices, positive }
}

/// All chordless cycles of length at least three, one per cycle, in canonical
/// orientation and sorted.
pub fn chordless_cycles(q: &UnitForm) -> Vec<ChordlessCycle> {
    let n = q.n();
    let mut found = BTreeSet::new();
    let mut path = Vec::new();
    for start in 0..n {
        path.push(start);
        extend_path(q, &mut path, &mut found);
        path.pop();
    }
    found.into_iter().map(|c: Vec<usize>| canonicalize_cycle(q, &c)).collect::<BTreeSet<_>>().into_iter().collect()
}

// Grows induced paths whose vertices all exceed path[0]; records a cycle
// whenever the new vertex closes back to path[0] without chords.
fn extend_path(q: &UnitForm, path: &mut Vec<usize>, found: &mut BTreeSet<Vec<usize>>) {
    let start = path[0];
    let last = *path.last().expect("nonempty path");
    for v in start + 1..q.n() {
        if path.contains(&v) || !q.adjacent(last, v) {
            continue;
        }
        let inner = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        if inner.iter().any(|&u| q.adjacent(u, v)) {
            continue;
        }
        let closes = path.len() >= 2 && q.adjacent(start, v);
        if closes {
            // each cycle is met once per direction; keep the one with path[1] < v
            if path[1] < v {
                let mut cycle = path.clone();
                cycle.push(v);
                found.insert(cycle);
            }
            continue;
        }
        path.push(v);
        extend_path(q, path, found);
        path.pop();
    }
}

/// The set `r2`: one multibracket per positive chordless cycle.
pub fn gen_r2(q: &UnitForm) -> RelationSet {
    warn_if_not_strict(q, "r2");
    RelationSet::new(
        Tag::R2,
        chordless_cycles(q).into_iter().filter(ChordlessCycle::is_positive).map(|c| c.as_multibracket()),
    )
}

/// `j = r1 ∪ r2`.
pub fn gen_j(q: &UnitForm) -> RelationSet {
    gen_r1(q).union(&gen_r2(q), Tag::J)
}

/// Generates the set named by `tag`. `Custom` is rejected.
pub fn generate(q: &UnitForm, tag: Tag) -> Result<RelationSet> {
    generate_with_cap(q, tag, DEFAULT_SEQUENCE_CAP)
}

/// As [`generate`], with `cap` bounding the root-sequence enumeration behind
/// `r`, `r0` and `p`.
pub fn generate_with_cap(q: &UnitForm, tag: Tag, cap: usize) -> Result<RelationSet> {
    Ok(match tag {
        Tag::R => gen_r_with_cap(q, cap)?,
        Tag::R0 => r0_from(q, gen_r_with_cap(q, cap)?),
        Tag::R1 => gen_r1(q),
        Tag::R2 => gen_r2(q),
        Tag::P => gen_r1(q).union(&r0_from(q, gen_r_with_cap(q, cap)?), Tag::P),
        Tag::J => gen_j(q),
        Tag::Custom => {
            return Err(crate::error::Error::InvalidForm("custom relation sets are supplied, not generated".into()))
        }
    })
}
