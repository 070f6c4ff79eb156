//! Machine-checked renderings of the structural identities on concrete forms.
//!
//! Every check returns a [`TheoremReport`]. A `fail` verdict always carries a
//! concrete witness in `details`; `not_applicable` names the hypothesis that
//! does not hold.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::fixtures;
use crate::form::{self, UnitForm, WeakPositivity};
use crate::free_lie::{self, lie_algebra_with_cache, GradedDims, IdealCache, Multibracket};
use crate::relations::{self, RelationSet, Tag};
use crate::roots::{self, RootSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "not_applicable" => Ok(Verdict::NotApplicable),
            other => Err(format!("unknown verdict `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub form: UnitForm,
    pub verdict: Verdict,
    pub details: Value,
}

impl TheoremReport {
    fn new(theorem: impl Into<String>, form: &UnitForm, verdict: Verdict, details: Value) -> Self {
        TheoremReport { theorem: theorem.into(), form: form.clone(), verdict, details }
    }

    fn not_applicable(theorem: impl Into<String>, form: &UnitForm, hypothesis: &str, extra: Value) -> Self {
        let mut details = json!({ "violated_hypothesis": hypothesis });
        if let (Value::Object(map), Value::Object(more)) = (&mut details, extra) {
            map.extend(more);
        }
        Self::new(theorem, form, Verdict::NotApplicable, details)
    }

    pub fn is_ok(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// `{"theorem": id, "form": {...}, "verdict": "...", "details": {...}}`
    /// with keys sorted.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialization is infallible")
    }
}

fn one_based(v: &Multibracket) -> Vec<usize> {
    v.to_one_based()
}

/// Numeric limits applied by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of positive roots enumerated.
    pub root_cap: usize,
    /// Maximum number of root sequences enumerated while generating `r`.
    pub sequence_cap: usize,
    /// Box bound for the weak positivity search.
    pub box_bound: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            root_cap: roots::DEFAULT_ROOT_CAP,
            sequence_cap: roots::DEFAULT_SEQUENCE_CAP,
            box_bound: form::DEFAULT_BOX_BOUND,
        }
    }
}

impl Budget {
    fn roots(&self, q: &UnitForm) -> Result<RootSet> {
        roots::positive_roots(q, self.root_cap)
    }

    fn relations(&self, q: &UnitForm, tag: Tag) -> Result<RelationSet> {
        relations::generate_with_cap(q, tag, self.sequence_cap)
    }
}

fn weak_positivity_guard(theorem: &str, q: &UnitForm, budget: &Budget) -> Option<TheoremReport> {
    match form::is_weakly_positive(q, budget.box_bound) {
        WeakPositivity::NotWeaklyPositive(w) => Some(TheoremReport::not_applicable(
            theorem,
            q,
            "not weakly positive",
            json!({ "witness": w.entries() }),
        )),
        _ => None,
    }
}

struct RootData {
    roots: RootSet,
    dims: GradedDims,
}

fn r_quotient(q: &UnitForm, budget: &Budget) -> Result<RootData> {
    let roots = budget.roots(q)?;
    let r = budget.relations(q, Tag::R)?;
    let dims = lie_algebra_with_cache(q, &r, roots.max_height(), &mut IdealCache::new(q, &r));
    Ok(RootData { roots, dims })
}

/// Components of `L(q, r)` vanish off the positive roots and are at most
/// one-dimensional on them (checked through total degree `H + 1`).
pub fn check_grading(q: &UnitForm) -> Result<TheoremReport> {
    grading(q, &Budget::default())
}

fn grading(q: &UnitForm, budget: &Budget) -> Result<TheoremReport> {
    const ID: &str = "root_grading";
    if let Some(report) = weak_positivity_guard(ID, q, budget) {
        return Ok(report);
    }
    let RootData { roots, dims } = r_quotient(q, budget)?;
    let violations: Vec<Value> = dims
        .dims()
        .iter()
        .filter(|(e, &d)| if roots.contains(e) { d > 1 } else { d > 0 })
        .map(|(e, &d)| json!({ "degree": e.entries(), "dim": d, "is_root": roots.contains(e) }))
        .collect();
    let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(TheoremReport::new(
        ID,
        q,
        verdict,
        json!({
            "positive_roots": roots.len(),
            "degrees_checked": dims.dims().len(),
            "height_bound": dims.height_bound(),
            "violations": violations,
        }),
    ))
}

/// `L(q, r)` vanishes in total degree `H + 1` and has total dimension at most
/// the number of positive roots.
pub fn check_nilpotency(q: &UnitForm) -> Result<TheoremReport> {
    nilpotency(q, &Budget::default())
}

fn nilpotency(q: &UnitForm, budget: &Budget) -> Result<TheoremReport> {
    const ID: &str = "nilpotency";
    if let Some(report) = weak_positivity_guard(ID, q, budget) {
        return Ok(report);
    }
    let RootData { roots, dims } = r_quotient(q, budget)?;
    let top: Vec<Value> = dims
        .dims()
        .iter()
        .filter(|(e, &d)| e.height() == i64::from(dims.height_bound()) && d > 0)
        .map(|(e, &d)| json!({ "degree": e.entries(), "dim": d }))
        .collect();
    let ok = dims.nilpotency_certified_at().is_some() && dims.total() <= roots.len() as u64;
    Ok(TheoremReport::new(
        ID,
        q,
        if ok { Verdict::Pass } else { Verdict::Fail },
        json!({
            "nilpotent_at": dims.nilpotency_certified_at(),
            "total_dim": dims.total(),
            "positive_roots": roots.len(),
            "nonzero_top_degrees": top,
        }),
    ))
}

/// Total dimension of `L(q, r)` equals the number of positive roots.
///
/// The identity is only claimed for Tits forms of representation-directed
/// algebras, which cannot be checked here. With `hypothesis_asserted` the
/// caller vouches for it and a mismatch is a failure; without it a mismatch is
/// reported as not applicable.
pub fn check_dim_identity(q: &UnitForm, hypothesis_asserted: bool) -> Result<TheoremReport> {
    dim_identity(q, hypothesis_asserted, &Budget::default())
}

fn dim_identity(q: &UnitForm, hypothesis_asserted: bool, budget: &Budget) -> Result<TheoremReport> {
    const ID: &str = "dimension_identity";
    if let Some(report) = weak_positivity_guard(ID, q, budget) {
        return Ok(report);
    }
    let RootData { roots, dims } = r_quotient(q, budget)?;
    let details = json!({
        "total_dim": dims.total(),
        "positive_roots": roots.len(),
        "hypothesis_asserted_by_caller": hypothesis_asserted,
        "nilpotent_at": dims.nilpotency_certified_at(),
    });
    let equal = dims.total() == roots.len() as u64 && dims.nilpotency_certified_at().is_some();
    Ok(if equal {
        TheoremReport::new(ID, q, Verdict::Pass, details)
    } else if hypothesis_asserted {
        TheoremReport::new(ID, q, Verdict::Fail, details)
    } else {
        TheoremReport::not_applicable(ID, q, "representation-directed Tits form not asserted", details)
    })
}

/// Whether `(left) = (right)`: equal quotient dimensions in every degree
/// through `H + 1`, and every generator of each set lies in the other's ideal.
///
/// With `require_positive_definite` a form that is not positive definite
/// yields `not_applicable`; otherwise the comparison runs regardless and the
/// report records definiteness.
pub fn check_ideal_equality(
    q: &UnitForm,
    left: &RelationSet,
    right: &RelationSet,
    require_positive_definite: bool,
) -> Result<TheoremReport> {
    ideal_equality(q, left, right, require_positive_definite, &Budget::default())
}

fn ideal_equality(
    q: &UnitForm,
    left: &RelationSet,
    right: &RelationSet,
    require_positive_definite: bool,
    budget: &Budget,
) -> Result<TheoremReport> {
    let id = format!("ideal_equality_{}_{}", left.tag(), right.tag());
    let definite = form::is_positive_definite(q);
    if require_positive_definite && !definite {
        return Ok(TheoremReport::not_applicable(id, q, "not positive definite", json!({})));
    }
    if let Some(report) = weak_positivity_guard(&id, q, budget) {
        return Ok(report);
    }
    let roots = budget.roots(q)?;
    let mut left_cache = IdealCache::new(q, left);
    let mut right_cache = IdealCache::new(q, right);
    let left_dims = lie_algebra_with_cache(q, left, roots.max_height(), &mut left_cache);
    let right_dims = lie_algebra_with_cache(q, right, roots.max_height(), &mut right_cache);

    let mismatches: Vec<Value> = left_dims
        .dims()
        .iter()
        .filter_map(|(e, &l)| {
            let r = right_dims.dim(e).expect("same degree range");
            (l != r).then(|| json!({ "degree": e.entries(), "left": l, "right": r }))
        })
        .collect();
    let left_outside: Vec<Vec<usize>> =
        left.elements().iter().filter(|v| !right_cache.contains(v)).map(one_based).collect();
    let right_outside: Vec<Vec<usize>> =
        right.elements().iter().filter(|v| !left_cache.contains(v)).map(one_based).collect();

    let ok = mismatches.is_empty() && left_outside.is_empty() && right_outside.is_empty();
    Ok(TheoremReport::new(
        id,
        q,
        if ok { Verdict::Pass } else { Verdict::Fail },
        json!({
            "left": left.tag(),
            "right": right.tag(),
            "left_size": left.len(),
            "right_size": right.len(),
            "positive_definite": definite,
            "height_bound": left_dims.height_bound(),
            "left_total_dim": left_dims.total(),
            "right_total_dim": right_dims.total(),
            "degree_mismatches": mismatches,
            "left_not_in_right_ideal": left_outside,
            "right_not_in_left_ideal": right_outside,
        }),
    ))
}

/// Every element of `set` is needed: removing it strictly increases the
/// total quotient dimension through degree `H + 1`.
pub fn check_minimality(q: &UnitForm, set: &RelationSet) -> Result<TheoremReport> {
    minimality(q, set, &Budget::default())
}

fn minimality(q: &UnitForm, set: &RelationSet, budget: &Budget) -> Result<TheoremReport> {
    let id = format!("minimality_{}", set.tag());
    if let Some(report) = weak_positivity_guard(&id, q, budget) {
        return Ok(report);
    }
    let roots = budget.roots(q)?;
    let total_for = |s: &RelationSet| {
        lie_algebra_with_cache(q, s, roots.max_height(), &mut IdealCache::new(q, s)).total()
    };
    let base = total_for(set);
    let mut redundant = Vec::new();
    let mut increases = Vec::new();
    for v in set.elements() {
        let reduced = total_for(&set.without(v));
        if reduced > base {
            increases.push(json!({ "removed": one_based(v), "total_dim": reduced }));
        } else {
            redundant.push(one_based(v));
        }
    }
    Ok(TheoremReport::new(
        id,
        q,
        if redundant.is_empty() { Verdict::Pass } else { Verdict::Fail },
        json!({
            "size": set.len(),
            "total_dim": base,
            "height_bound": roots.max_height() + 1,
            "redundant": redundant,
            "removals": increases,
        }),
    ))
}

fn diff(generated: &BTreeSet<Multibracket>, published: &BTreeSet<Multibracket>) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let missing = published.difference(generated).map(one_based).collect();
    let extra = generated.difference(published).map(one_based).collect();
    (missing, extra)
}

/// Compares the generated sets `j` and `r` of the diamond poset form with the
/// bundled published lists.
///
/// Brackets that are identically zero are dropped from the generated `r`
/// before comparing and listed separately. Every remaining discrepancy is
/// itemized with a `documented` flag saying whether the bundled notes account
/// for it; the verdict is `pass` when the `j` lists agree exactly and every
/// `r` discrepancy is documented. `exact` records whether the `r` lists agree
/// outright.
pub fn check_poset_example(q: &UnitForm) -> Result<TheoremReport> {
    poset_example(q, &Budget::default())
}

fn poset_example(q: &UnitForm, budget: &Budget) -> Result<TheoremReport> {
    const ID: &str = "poset_example";
    const EXPECTED_ROOTS: usize = 11;
    let roots = match budget.roots(q) {
        Ok(r) => r.len(),
        Err(e) => {
            return Ok(TheoremReport::new(ID, q, Verdict::Fail, json!({ "reason": e.to_string() })));
        }
    };
    if roots != EXPECTED_ROOTS || q.n() != 4 {
        return Ok(TheoremReport::new(
            ID,
            q,
            Verdict::Fail,
            json!({
                "reason": "not the diamond poset form",
                "expected_positive_roots": EXPECTED_ROOTS,
                "positive_roots": roots,
            }),
        ));
    }
    let n = q.n();

    let gen_j: BTreeSet<_> = relations::gen_j(q).elements().iter().cloned().collect();
    let pub_j: BTreeSet<_> = fixtures::poset_j().into_iter().collect();
    let (j_missing, j_extra) = diff(&gen_j, &pub_j);

    let (zero, gen_r): (Vec<_>, Vec<_>) =
        budget.relations(q, Tag::R)?.elements().iter().cloned().partition(|v| free_lie::expand(v, n).is_zero());
    let gen_r: BTreeSet<_> = gen_r.into_iter().collect();
    let pub_r: BTreeSet<_> = fixtures::poset_r().into_iter().collect();
    let notes: BTreeSet<_> = fixtures::poset_r_notes().into_iter().map(|v| v.to_one_based()).collect();
    let (r_missing, r_extra) = diff(&gen_r, &pub_r);
    let annotate = |items: &[Vec<usize>], side: &str| -> Vec<Value> {
        items
            .iter()
            .map(|v| json!({ "element": v, "side": side, "documented": side == "extra" && notes.contains(v) }))
            .collect()
    };
    let mut discrepancies = annotate(&r_missing, "missing");
    discrepancies.extend(annotate(&r_extra, "extra"));
    let undocumented = discrepancies.iter().filter(|d| d["documented"] == json!(false)).count();

    let j_ok = j_missing.is_empty() && j_extra.is_empty();
    let ok = j_ok && undocumented == 0;
    Ok(TheoremReport::new(
        ID,
        q,
        if ok { Verdict::Pass } else { Verdict::Fail },
        json!({
            "j": {
                "generated": gen_j.len(),
                "published": pub_j.len(),
                "missing_from_generated": j_missing,
                "extra_in_generated": j_extra,
            },
            "r": {
                "generated_nonzero": gen_r.len(),
                "published": pub_r.len(),
                "zero_brackets_omitted": zero.iter().map(one_based).collect::<Vec<_>>(),
                "exact": discrepancies.is_empty(),
                "discrepancies": discrepancies,
                "undocumented": undocumented,
            },
        }),
    ))
}

/// The checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Grading,
    Nilpotency,
    DimensionIdentity,
    IdealEqualityPR,
    IdealEqualityJP,
    IdealEqualityJR,
    MinimalityJ,
    PosetExample,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Grading,
        Check::Nilpotency,
        Check::DimensionIdentity,
        Check::IdealEqualityPR,
        Check::IdealEqualityJP,
        Check::IdealEqualityJR,
        Check::MinimalityJ,
        Check::PosetExample,
    ];

    /// What `all` selects: everything except the poset comparison, which only
    /// makes sense on one specific form.
    pub fn default_set() -> Vec<Check> {
        Self::ALL.into_iter().filter(|c| *c != Check::PosetExample).collect()
    }

    pub fn id(self) -> &'static str {
        match self {
            Check::Grading => "grading",
            Check::Nilpotency => "nilpotency",
            Check::DimensionIdentity => "dimension_identity",
            Check::IdealEqualityPR => "ideal_equality_p_r",
            Check::IdealEqualityJP => "ideal_equality_j_p",
            Check::IdealEqualityJR => "ideal_equality_j_r",
            Check::MinimalityJ => "minimality_j",
            Check::PosetExample => "poset_example",
        }
    }

    /// Parses a comma-separated list of check ids, where `all` stands for
    /// [`Check::default_set`]. Duplicates are dropped, first occurrence wins.
    pub fn parse_list(text: &str) -> std::result::Result<Vec<Check>, String> {
        let mut out: Vec<Check> = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let checks = if part == "all" { Self::default_set() } else { vec![part.parse()?] };
            for check in checks {
                if !out.contains(&check) {
                    out.push(check);
                }
            }
        }
        if out.is_empty() {
            return Err("no checks selected".into());
        }
        Ok(out)
    }

    /// Runs the check. Checks resting on positive definiteness report
    /// `not_applicable` for other forms, except `ideal_equality_j_r`, which
    /// always compares and records definiteness.
    pub fn run(self, q: &UnitForm, options: &CheckOptions) -> Result<TheoremReport> {
        let b = &options.budget;
        let mut report = match self {
            Check::Grading => grading(q, b)?,
            Check::Nilpotency => nilpotency(q, b)?,
            Check::DimensionIdentity => dim_identity(q, options.assert_representation_directed, b)?,
            Check::IdealEqualityPR => ideal_equality(q, &b.relations(q, Tag::P)?, &b.relations(q, Tag::R)?, true, b)?,
            Check::IdealEqualityJP => ideal_equality(q, &relations::gen_j(q), &b.relations(q, Tag::P)?, true, b)?,
            Check::IdealEqualityJR => ideal_equality(q, &relations::gen_j(q), &b.relations(q, Tag::R)?, false, b)?,
            Check::MinimalityJ => {
                if form::is_positive_definite(q) {
                    minimality(q, &relations::gen_j(q), b)?
                } else {
                    TheoremReport::not_applicable("minimality_j", q, "not positive definite", json!({}))
                }
            }
            Check::PosetExample => poset_example(q, b)?,
        };
        report.theorem = self.id().to_string();
        Ok(report)
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| {
            let known: Vec<&str> = Self::ALL.iter().map(|c| c.id()).collect();
            format!("unknown check `{s}` (known: all, {})", known.join(", "))
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    /// The caller vouches that the form is the Tits form of a
    /// representation-directed algebra.
    pub assert_representation_directed: bool,
    pub budget: Budget,
}

/// Runs independent checks on separate threads; reports come back in the
/// order of `checks`.
pub fn run_checks(q: &UnitForm, checks: &[Check], options: &CheckOptions) -> Vec<Result<TheoremReport>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = checks.iter().map(|&c| scope.spawn(move || c.run(q, options))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    })
}
