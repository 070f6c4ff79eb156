//! The `liequad` command line.
//!
//! Every command first builds a JSON value; `--json` prints it, otherwise it
//! is rendered as text. JSON output has sorted keys and canonically ordered
//! lists, so repeated runs (cached or not) print identical bytes.
//!
//! Exit codes: 0 success or expected outcome, 1 unexpected verification
//! failure (or a `member` query answered `false`), 2 budget exceeded, 64 usage
//! or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::fixtures;
use crate::form::{self, UnitForm};
use crate::free_lie::{self, lie_algebra_with_cache, IdealCache, Multibracket};
use crate::relations::Tag;
use crate::roots;
use crate::verify::{self, Budget, Check, CheckOptions, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "liequad", version, about = "Positive roots, relation sets and graded Lie algebras of unit integral quadratic forms")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached results.
    #[arg(long, global = true, env = "LIEQUAD_CACHE", value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Box bound for the weak positivity search.
    #[arg(long, global = true, default_value_t = form::DEFAULT_BOX_BOUND)]
    bound: u32,
    /// Maximum number of positive roots.
    #[arg(long, global = true, default_value_t = roots::DEFAULT_ROOT_CAP)]
    cap: usize,
    /// Maximum number of root sequences enumerated for `r`, `r0` and `p`.
    #[arg(long, global = true, default_value_t = roots::DEFAULT_SEQUENCE_CAP)]
    sequence_cap: usize,
}

#[derive(Debug, Args)]
struct FormInput {
    /// A `.qform` file, or `builtin:NAME` for a bundled form.
    #[arg(value_name = "FORM", required_unless_present = "inline", conflicts_with = "inline")]
    path: Option<String>,
    /// The form as inline `.qform` text, lines separated by `;`.
    #[arg(long, value_name = "TEXT")]
    inline: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, definiteness, weak positivity, connectivity and bigraph of a form.
    Info {
        #[command(flatten)]
        form: FormInput,
        /// Also print the bigraph in Graphviz format.
        #[arg(long)]
        dot: bool,
    },
    /// Positive roots, optionally with a Weyl chain for each.
    Roots {
        #[command(flatten)]
        form: FormInput,
        #[arg(long)]
        chains: bool,
    },
    /// One of the relation sets r, r0, r1, r2, p, j.
    Relations {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_parser = parse_tag)]
        set: Tag,
    },
    /// Graded dimensions of the quotient by a relation set.
    Dims {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_parser = parse_tag)]
        set: Tag,
    },
    /// Whether a multibracket lies in the ideal generated by a relation set.
    /// Exits 0 when it does and 1 when it does not.
    Member {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_parser = parse_tag)]
        set: Tag,
        /// 1-based indices, e.g. `4,3,2,1` for [v4,[v3,[v2,v1]]].
        #[arg(long)]
        element: String,
    },
    /// Runs structural checks and reports a verdict for each.
    Verify {
        #[command(flatten)]
        form: FormInput,
        /// `all` or a comma-separated list of check ids.
        #[arg(long, default_value = "all")]
        checks: String,
        /// File of `CHECK VERDICT` lines marking expected outcomes.
        #[arg(long, value_name = "FILE")]
        expect: Option<PathBuf>,
        /// Assert that the form is the Tits form of a representation-directed
        /// algebra, making a dimension mismatch a failure.
        #[arg(long)]
        assert_directed: bool,
    },
}

fn parse_tag(s: &str) -> Result<Tag, String> {
    match s.parse::<Tag>() {
        Ok(Tag::Custom) | Err(_) => Err(format!("unknown relation set `{s}` (expected r, r0, r1, r2, p or j)")),
        Ok(tag) => Ok(tag),
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RootBudgetExceeded { .. } | Error::SequenceBudgetExceeded { .. } => EXIT_BUDGET,
            Error::Parse { .. } | Error::InvalidForm(_) | Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => {
                EXIT_USAGE
            }
            Error::Overflow | Error::NotARoot(_) | Error::NoDescent(_) => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line on `args` (including the program name) and captures
/// its output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(EXIT_OK, text),
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli) {
        Ok((code, value, text)) => {
            let stdout = if cli.global.json {
                let mut s = serde_json::to_string_pretty(&value).expect("JSON rendering is infallible");
                s.push('\n');
                s
            } else {
                text
            };
            Outcome::ok(code, stdout)
        }
        Err(f) => Outcome::error(f.code, f.message),
    }
}

fn load_form(input: &FormInput) -> CliResult<UnitForm> {
    let text = match (&input.path, &input.inline) {
        (_, Some(inline)) => inline.replace(';', "\n"),
        (Some(path), None) => match path.strip_prefix("builtin:") {
            Some(name) => fixtures::source(name)
                .ok_or_else(|| {
                    let known: Vec<_> = fixtures::names().collect();
                    Failure::usage(format!("no bundled form `{name}` (known: {})", known.join(", ")))
                })?
                .to_string(),
            None => fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read `{path}`: {e}")))?,
        },
        (None, None) => return Err(Failure::usage("no form given")),
    };
    Ok(UnitForm::parse_qform(&text)?)
}

fn budget(global: &GlobalArgs) -> Budget {
    Budget { root_cap: global.cap, sequence_cap: global.sequence_cap, box_bound: global.bound }
}

fn execute(cli: &Cli) -> CliResult<(i32, Value, String)> {
    let g = &cli.global;
    let cache = g.cache.as_deref().map(Cache::new).transpose()?;
    let cached = |q: &UnitForm, op: &str, params: Value, f: &mut dyn FnMut() -> CliResult<Value>| match &cache {
        Some(c) => c.get_or_compute(q, op, &params, f),
        None => f(),
    };
    match &cli.command {
        Command::Info { form: input, dot } => {
            let q = load_form(input)?;
            let value = info_json(&q, g.bound);
            let mut text = info_text(&value);
            if *dot {
                text.push_str(&form::bigraph(&q).to_dot());
            }
            Ok((EXIT_OK, value, text))
        }
        Command::Roots { form: input, chains } => {
            let q = load_form(input)?;
            let params = json!({ "chains": chains, "cap": g.cap });
            let value = cached(&q, "roots", params, &mut || roots_json(&q, g.cap, *chains))?;
            let text = roots_text(&value);
            Ok((EXIT_OK, value, text))
        }
        Command::Relations { form: input, set } => {
            let q = load_form(input)?;
            let params = json!({ "set": set, "sequence_cap": g.sequence_cap });
            let value = cached(&q, "relations", params, &mut || {
                let s = crate::relations::generate_with_cap(&q, *set, g.sequence_cap)?;
                let mut v = s.to_json();
                v["count"] = json!(s.len());
                Ok(v)
            })?;
            let text = relations_text(&value);
            Ok((EXIT_OK, value, text))
        }
        Command::Dims { form: input, set } => {
            let q = load_form(input)?;
            let params = json!({ "set": set, "cap": g.cap, "sequence_cap": g.sequence_cap });
            let value = cached(&q, "dims", params, &mut || {
                let roots = roots::positive_roots(&q, g.cap)?;
                let s = crate::relations::generate_with_cap(&q, *set, g.sequence_cap)?;
                let dims = lie_algebra_with_cache(&q, &s, roots.max_height(), &mut IdealCache::new(&q, &s));
                let mut v = dims.to_json();
                v["set"] = json!(set);
                v["positive_roots"] = json!(roots.len());
                v["height_bound"] = json!(dims.height_bound());
                Ok(v)
            })?;
            let text = dims_text(&value);
            Ok((EXIT_OK, value, text))
        }
        Command::Member { form: input, set, element } => {
            let q = load_form(input)?;
            let v = Multibracket::parse_one_based(element)
                .ok_or_else(|| Failure::usage(format!("invalid element `{element}` (expected 1-based indices like 4,3,2,1)")))?;
            if v.max_index() >= q.n() {
                return Err(Failure::usage(format!("element `{element}` uses an index above {}", q.n())));
            }
            let params = json!({ "set": set, "element": v.to_one_based(), "sequence_cap": g.sequence_cap });
            let value = cached(&q, "member", params, &mut || {
                let s = crate::relations::generate_with_cap(&q, *set, g.sequence_cap)?;
                let member = IdealCache::new(&q, &s).contains(&v);
                Ok(json!({
                    "element": v.to_one_based(),
                    "degree": v.degree(q.n()).entries(),
                    "set": set,
                    "member": member,
                    "zero": free_lie::expand(&v, q.n()).is_zero(),
                }))
            })?;
            let member = value["member"] == json!(true);
            let text = format!("{} in ({}): {}\n", v, set, if member { "true" } else { "false" });
            Ok((if member { EXIT_OK } else { EXIT_FAILURE }, value, text))
        }
        Command::Verify { form: input, checks, expect, assert_directed } => {
            let q = load_form(input)?;
            let checks = Check::parse_list(checks).map_err(Failure::usage)?;
            let expectations = match expect {
                Some(path) => read_expectations(path)?,
                None => Vec::new(),
            };
            let options = CheckOptions { assert_representation_directed: *assert_directed, budget: budget(g) };
            let reports = run_checks_cached(&q, &checks, &options, cache.as_ref())?;
            let mut entries = Vec::new();
            let mut unexpected = 0;
            for (check, report) in checks.iter().zip(reports) {
                let expected = expectations.iter().find(|(c, _)| c == check).map(|(_, v)| *v);
                let verdict: Verdict = report["verdict"].as_str().and_then(|s| s.parse().ok()).expect("report verdict");
                let surprising = match expected {
                    Some(e) => e != verdict,
                    None => verdict == Verdict::Fail,
                };
                unexpected += usize::from(surprising);
                let mut entry = report;
                entry["expected"] = json!(expected);
                entry["unexpected"] = json!(surprising);
                entries.push(entry);
            }
            let value = json!({ "form": q.to_json(), "reports": entries, "unexpected": unexpected });
            let text = verify_text(&value);
            Ok((if unexpected == 0 { EXIT_OK } else { EXIT_FAILURE }, value, text))
        }
    }
}

fn run_checks_cached(
    q: &UnitForm,
    checks: &[Check],
    options: &CheckOptions,
    cache: Option<&Cache>,
) -> CliResult<Vec<Value>> {
    let b = &options.budget;
    let params = |c: Check| {
        json!({
            "check": c.id(),
            "assert_directed": options.assert_representation_directed,
            "cap": b.root_cap,
            "sequence_cap": b.sequence_cap,
            "bound": b.box_bound,
        })
    };
    let mut out: Vec<Option<Value>> = vec![None; checks.len()];
    let mut todo = Vec::new();
    for (k, &c) in checks.iter().enumerate() {
        match cache.and_then(|cache| cache.lookup(q, "verify", &params(c))) {
            Some(v) => out[k] = Some(v),
            None => todo.push(k),
        }
    }
    let pending: Vec<Check> = todo.iter().map(|&k| checks[k]).collect();
    for (k, result) in todo.into_iter().zip(verify::run_checks(q, &pending, options)) {
        let value = result?.to_json();
        if let Some(cache) = cache {
            cache.store(q, "verify", &params(checks[k]), &value);
        }
        out[k] = Some(value);
    }
    Ok(out.into_iter().map(|v| v.expect("every check ran")).collect())
}

fn read_expectations(path: &Path) -> CliResult<Vec<(Check, Verdict)>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read `{}`: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Failure::usage(format!("{}:{}: {msg}", path.display(), k + 1));
        let mut parts = line.split_whitespace();
        let (Some(check), Some(verdict), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `CHECK VERDICT`, got `{line}`")));
        };
        out.push((check.parse().map_err(bad)?, verdict.parse().map_err(bad)?));
    }
    Ok(out)
}

fn info_json(q: &UnitForm, bound: u32) -> Value {
    let b = form::bigraph(q);
    let edges = |m: &std::collections::BTreeMap<(usize, usize), u64>| -> Vec<[u64; 3]> {
        m.iter().map(|(&(i, j), &mult)| [i as u64 + 1, j as u64 + 1, mult]).collect()
    };
    json!({
        "n": q.n(),
        "strict_unit": q.is_strict_unit(),
        "connected": form::is_connected(q),
        "positive_definite": form::is_positive_definite(q),
        "weak_positivity": form::is_weakly_positive(q, bound),
        "box_bound": bound,
        "bigraph": { "solid": edges(b.solid_edges()), "broken": edges(b.broken_edges()) },
    })
}

fn yes_no(v: &Value) -> &'static str {
    if v == &json!(true) {
        "yes"
    } else {
        "no"
    }
}

fn vector_text(v: &Value) -> String {
    let parts: Vec<String> = v.as_array().into_iter().flatten().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn bracket_text(v: &Value) -> String {
    let parts: Vec<String> = v.as_array().into_iter().flatten().map(|x| format!("v{x}")).collect();
    format!("[{}]", parts.join(","))
}

fn info_text(v: &Value) -> String {
    let wp = &v["weak_positivity"];
    let weak = match wp["status"].as_str() {
        Some("weakly_positive") => "yes".to_string(),
        Some("not_weakly_positive") => format!("no (q{} <= 0)", vector_text(&wp["witness"])),
        _ => format!("inconclusive (no witness in box 0..{})", v["box_bound"]),
    };
    let edge_list = |key: &str| -> String {
        let items: Vec<String> = v["bigraph"][key]
            .as_array()
            .into_iter()
            .flatten()
            .map(|e| if e[2] == json!(1) { format!("{}-{}", e[0], e[1]) } else { format!("{}-{} x{}", e[0], e[1], e[2]) })
            .collect();
        if items.is_empty() {
            "none".into()
        } else {
            items.join(", ")
        }
    };
    format!(
        "variables: {}\nstrict unit: {}\npositive definite: {}\nweakly positive: {}\nconnected: {}\nsolid edges: {}\nbroken edges: {}\n",
        v["n"],
        yes_no(&v["strict_unit"]),
        yes_no(&v["positive_definite"]),
        weak,
        yes_no(&v["connected"]),
        edge_list("solid"),
        edge_list("broken"),
    )
}

fn roots_json(q: &UnitForm, cap: usize, chains: bool) -> CliResult<Value> {
    let set = roots::positive_roots(q, cap)?;
    let mut value = set.to_json();
    if chains {
        let mut list = Vec::new();
        for r in set.roots() {
            let chain = roots::weyl_chain(q, r)?;
            list.push(json!({
                "root": r.entries(),
                "steps": chain.steps(),
                "removed": chain.removed_indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
            }));
        }
        value["chains"] = Value::Array(list);
    }
    Ok(value)
}

fn roots_text(v: &Value) -> String {
    let mut out = format!("{} positive roots, maximal height {}\n", v["count"], v["max_height"]);
    match v.get("chains") {
        Some(chains) => {
            for c in chains.as_array().into_iter().flatten() {
                let steps: Vec<String> = c["steps"].as_array().into_iter().flatten().map(vector_text).collect();
                let _ = writeln!(out, "{}", steps.join(" -> "));
            }
        }
        None => {
            for r in v["roots"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "{}", vector_text(r));
            }
        }
    }
    out
}

fn relations_text(v: &Value) -> String {
    let mut out = format!("{} elements in {}\n", v["count"], v["tag"].as_str().unwrap_or("?"));
    for e in v["elements"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "{}", bracket_text(e));
    }
    out
}

fn dims_text(v: &Value) -> String {
    let mut out = String::new();
    for d in v["dims"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "{}  {}", vector_text(&d["degree"]), d["dim"]);
    }
    let _ = writeln!(out, "total dimension: {}", v["total"]);
    match v["nilpotent_at"].as_u64() {
        Some(h) => {
            let _ = writeln!(out, "vanishes from total degree {h}");
        }
        None => {
            let _ = writeln!(out, "not certified nilpotent through total degree {}", v["height_bound"]);
        }
    }
    out
}

fn verify_text(v: &Value) -> String {
    let mut out = String::new();
    for r in v["reports"].as_array().into_iter().flatten() {
        let verdict = r["verdict"].as_str().unwrap_or("?");
        let note = match (r["expected"].as_str(), r["unexpected"].as_bool()) {
            (Some(_), Some(false)) if verdict != "pass" => " (expected for this form)",
            (Some(e), Some(true)) => {
                let _ = writeln!(out, "{}: {verdict} (expected {e})", r["theorem"].as_str().unwrap_or("?"));
                continue;
            }
            _ => "",
        };
        let _ = writeln!(out, "{}: {verdict}{note}", r["theorem"].as_str().unwrap_or("?"));
        if verdict != "pass" {
            let _ = writeln!(out, "  {}", r["details"]);
        }
    }
    let unexpected = v["unexpected"].as_u64().unwrap_or(0);
    if unexpected > 0 {
        let _ = writeln!(out, "{unexpected} unexpected result(s)");
    }
    out
}

/// Results stored as one JSON file per (form, operation, parameters), named
/// by the SHA-256 of that triple. A `.lock` file created next to an entry
/// keeps concurrent writers out; a process that finds the lock taken simply
/// does not write.
struct Cache {
    dir: PathBuf,
}

impl Cache {
    fn new(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::usage(format!("cannot create cache directory `{}`: {e}", dir.display())))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn key(q: &UnitForm, op: &str, params: &Value) -> String {
        let material = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "form": q.to_json(),
            "op": op,
            "params": params,
        });
        hex::encode(Sha256::digest(material.to_string().as_bytes()))
    }

    fn lookup(&self, q: &UnitForm, op: &str, params: &Value) -> Option<Value> {
        let path = self.dir.join(format!("{}.json", Self::key(q, op, params)));
        let text = fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn store(&self, q: &UnitForm, op: &str, params: &Value, value: &Value) {
        let key = Self::key(q, op, params);
        let lock = self.dir.join(format!("{key}.lock"));
        if OpenOptions::new().write(true).create_new(true).open(&lock).is_err() {
            return;
        }
        let tmp = self.dir.join(format!("{key}.tmp"));
        let written = fs::File::create(&tmp)
            .and_then(|mut f| f.write_all(value.to_string().as_bytes()))
            .and_then(|()| fs::rename(&tmp, self.dir.join(format!("{key}.json"))));
        if let Err(e) = written {
            log::warn!("could not write cache entry {key}: {e}");
            let _ = fs::remove_file(&tmp);
        }
        let _ = fs::remove_file(lock);
    }

    fn get_or_compute(
        &self,
        q: &UnitForm,
        op: &str,
        params: &Value,
        compute: &mut dyn FnMut() -> CliResult<Value>,
    ) -> CliResult<Value> {
        if let Some(v) = self.lookup(q, op, params) {
            return Ok(v);
        }
        let v = compute()?;
        self.store(q, op, params, &v);
        Ok(v)
    }
}
