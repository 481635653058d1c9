//! Report types shared by the subcommands, with their JSON and table forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bcc_core::{Classification, PairState, RelationKind, Verdict};
use serde::Serialize;

pub const TOOL: &str = concat!("bcc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub client: String,
    pub server: String,
    pub verdicts: BTreeMap<String, bool>,
    pub witness: BTreeMap<String, Vec<[u32; 2]>>,
    #[serde(skip)]
    pub ordered: Vec<Verdict>,
}

impl PairReport {
    pub fn new(client: String, server: String, verdicts: Vec<Verdict>) -> Self {
        let mut map = BTreeMap::new();
        let mut witness = BTreeMap::new();
        for v in &verdicts {
            map.insert(v.kind.to_string(), v.holds);
            if let Some(path) = &v.witness {
                witness.insert(v.kind.to_string(), path.iter().map(|p| [p.client.0, p.server.0]).collect());
            }
        }
        PairReport {
            client,
            server,
            verdicts: map,
            witness,
            ordered: verdicts,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.ordered.iter().all(|v| v.holds)
    }
}

#[derive(Debug, Serialize)]
pub struct Status {
    pub pre: bool,
    pub post: bool,
    pub fix: bool,
}

impl From<&Classification> for Status {
    fn from(c: &Classification) -> Self {
        Status {
            pre: c.is_pre,
            post: c.is_post,
            fix: c.is_fix,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub pairs: Vec<PairReport>,
    pub classification: BTreeMap<String, Status>,
}

impl Report {
    pub fn new(pairs: Vec<PairReport>, classification: &BTreeMap<RelationKind, Classification>) -> Self {
        Report {
            tool: TOOL,
            pairs,
            classification: classification.iter().map(|(k, c)| (k.to_string(), c.into())).collect(),
        }
    }
}

pub fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn path(p: &[PairState], client: &str, server: &str) -> String {
    p.iter()
        .map(|s| format!("{client}.{} ‖ {server}.{}", s.client, s.server))
        .collect::<Vec<_>>()
        .join(" → ")
}

/// ✓/✗ table, one row per pair, columns in the order of `kinds`.
pub fn table(pairs: &[PairReport], kinds: &[RelationKind]) -> String {
    let labels: Vec<String> = pairs.iter().map(|p| format!("{}/{}", p.client, p.server)).collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(4);
    let mut out = format!("{:width$}", "pair");
    for k in kinds {
        write!(out, "  {k:>3}").unwrap();
    }
    out.push('\n');
    for (label, p) in labels.iter().zip(pairs) {
        write!(out, "{label:width$}").unwrap();
        for v in &p.ordered {
            write!(out, "  {:>3}", mark(v.holds)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Witness paths of the failed relations of `p`.
pub fn witnesses(p: &PairReport) -> String {
    let mut out = String::new();
    for v in p.ordered.iter().filter(|v| !v.holds) {
        match &v.witness {
            Some(w) => writeln!(out, "{} fails: {}", v.kind, path(w, &p.client, &p.server)).unwrap(),
            None => writeln!(out, "{} fails: no τ-path reaches success", v.kind).unwrap(),
        }
    }
    out
}

pub fn classification(c: &BTreeMap<RelationKind, Classification>) -> String {
    let mut out = String::from("relation  pre  post  fix\n");
    for (k, c) in c {
        writeln!(out, "{k:<8}  {:>3}  {:>4}  {:>3}", mark(c.is_pre), mark(c.is_post), mark(c.is_fix)).unwrap();
    }
    out
}
