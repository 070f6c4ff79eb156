//! Forms and relation lists shipped with the crate (see `fixtures/`).

use crate::error::{Error, Result};
use crate::form::UnitForm;
use crate::free_lie::Multibracket;

const FORMS: &[(&str, &str)] = &[
    ("a2", include_str!("../fixtures/a2.qform")),
    ("a3", include_str!("../fixtures/a3.qform")),
    ("a4", include_str!("../fixtures/a4.qform")),
    ("d4", include_str!("../fixtures/d4.qform")),
    ("diamond", include_str!("../fixtures/diamond.qform")),
    ("diamond_zero_relations", include_str!("../fixtures/diamond_zero_relations.qform")),
];

const POSET_R: &str = include_str!("../fixtures/poset_r.txt");
const POSET_J: &str = include_str!("../fixtures/poset_j.txt");
const POSET_R_NOTES: &str = include_str!("../fixtures/poset_r_notes.txt");

/// Names of the bundled forms.
pub fn names() -> impl Iterator<Item = &'static str> {
    FORMS.iter().map(|(name, _)| *name)
}

/// Source text of a bundled `.qform` file.
pub fn source(name: &str) -> Option<&'static str> {
    FORMS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// A bundled form by name.
///
/// # Panics
/// Never for the shipped fixtures; they are parsed in the unit tests.
pub fn form(name: &str) -> Option<UnitForm> {
    source(name).map(|text| UnitForm::parse_qform(text).expect("bundled fixture parses"))
}

/// Every bundled form, in a fixed order.
pub fn all_forms() -> Vec<(&'static str, UnitForm)> {
    names().map(|name| (name, form(name).expect("listed fixture exists"))).collect()
}

/// Parses a list of multibrackets, one `i1,i2,...` per line (1-based),
/// `#` comments allowed.
pub fn parse_multibracket_list(text: &str) -> Result<Vec<Multibracket>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = Multibracket::parse_one_based(line)
            .ok_or_else(|| Error::Parse { line: k + 1, message: format!("invalid multibracket `{line}`") })?;
        out.push(v);
    }
    Ok(out)
}

/// The published relation set `r` of the diamond poset form, in printed order.
pub fn poset_r() -> Vec<Multibracket> {
    parse_multibracket_list(POSET_R).expect("bundled list parses")
}

/// Members of the generated `r` of the diamond poset form that the published
/// list leaves out, each justified in `fixtures/poset_r_notes.txt`.
pub fn poset_r_notes() -> Vec<Multibracket> {
    parse_multibracket_list(POSET_R_NOTES).expect("bundled list parses")
}

/// The published minimal relation set `j` of the diamond poset form.
pub fn poset_j() -> Vec<Multibracket> {
    parse_multibracket_list(POSET_J).expect("bundled list parses")
}
