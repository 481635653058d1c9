//! Executable checks of the fixed-point characterisation of the relations
//! over a multi-root universe: a corpus plus seeded random pairs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::composition::{Composition, PairState, PairUniverse};
use crate::corpus::Corpus;
use crate::error::Result;
use crate::fixpoint::{apply_f, classify, gfp, lfp, restrict, Classification, PairSet};
use crate::generator::{random_pair, GenConfig};
use crate::lang::{Compiler, Term};
use crate::relations::RelationKind;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub random: usize,
    pub generator: GenConfig,
    pub max_states: usize,
    /// Bound on the universe of each individual root pair.
    pub max_pairs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            random: 0,
            generator: GenConfig::default(),
            max_states: crate::lang::DEFAULT_MAX_STATES,
            max_pairs: crate::composition::DEFAULT_MAX_PAIRS,
        }
    }
}

/// A named root of the verification universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    pub label: String,
    pub pair: PairState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub offending: Vec<PairState>,
}

/// Implications between relations that every pair must satisfy.
pub const INCLUSIONS: [(RelationKind, RelationKind); 7] = [
    (RelationKind::Must, RelationKind::Should),
    (RelationKind::Must, RelationKind::Beh),
    (RelationKind::Must, RelationKind::May),
    (RelationKind::Should, RelationKind::Progress),
    (RelationKind::Beh, RelationKind::Progress),
    (RelationKind::Should, RelationKind::May),
    (RelationKind::Io, RelationKind::Progress),
];

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub roots: Vec<Root>,
    /// Random pairs left out because they exceeded a bound.
    pub dropped: Vec<String>,
    pub universe_size: usize,
    pub checks: Vec<Check>,
    pub classification: BTreeMap<RelationKind, Classification>,
    /// Roots related by should but not by behavioural compliance.
    pub should_not_beh: Vec<String>,
    /// Roots related by behavioural but not by should compliance.
    pub beh_not_should: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn equal(name: &str, u: &PairUniverse, a: &PairSet, b: &PairSet) -> Check {
    let mut offending: Vec<usize> = a.difference(b);
    offending.extend(b.difference(a));
    offending.sort_unstable();
    Check {
        name: name.to_string(),
        passed: offending.is_empty(),
        offending: offending.into_iter().map(|i| u.pair(i)).collect(),
    }
}

fn subset(name: &str, u: &PairUniverse, a: &PairSet, b: &PairSet) -> Check {
    let offending = a.difference(b);
    Check {
        name: name.to_string(),
        passed: offending.is_empty(),
        offending: offending.into_iter().map(|i| u.pair(i)).collect(),
    }
}

/// Runs every proposition check on `u`.
pub fn check_universe(u: &PairUniverse) -> (Vec<Check>, BTreeMap<RelationKind, PairSet>) {
    let rel: BTreeMap<RelationKind, PairSet> =
        RelationKind::ALL.iter().map(|&k| (k, restrict(u, k))).collect();
    let f = |k: RelationKind| apply_f(u, &rel[&k]).expect("same universe");
    let successful = PairSet::successful(u);

    let mut checks = vec![
        equal("lfp = mst", u, &lfp(u), &rel[&RelationKind::Must]),
        equal("gfp = pg", u, &gfp(u), &rel[&RelationKind::Progress]),
        equal("F(shd) = shd", u, &f(RelationKind::Should), &rel[&RelationKind::Should]),
        equal("F(beh) = beh", u, &f(RelationKind::Beh), &rel[&RelationKind::Beh]),
        subset("io ⊆ F(io)", u, &rel[&RelationKind::Io], &f(RelationKind::Io)),
        subset("F(may) ⊆ may", u, &f(RelationKind::May), &rel[&RelationKind::May]),
        subset("S ⊆ mst", u, &successful, &rel[&RelationKind::Must]),
    ];
    for (a, b) in INCLUSIONS {
        checks.push(subset(&format!("{a} ⊆ {b}"), u, &rel[&a], &rel[&b]));
    }
    (checks, rel)
}

/// Builds the multi-root universe of `corpus` plus `opts.random` generated
/// pairs and checks the propositions on it.
pub fn verify(corpus: &Corpus, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut compiler = Compiler::new(opts.max_states);
    let mut roots = Vec::new();

    for p in &corpus.pairs {
        let client = compiler.add(corpus.term(&p.client).expect("paired"))?;
        let server = compiler.add(corpus.term(&p.server).expect("paired"))?;
        roots.push(Root {
            label: format!("{}/{}", p.client, p.server),
            pair: PairState::new(client, server),
        });
    }

    let mut dropped = Vec::new();
    for i in 0..opts.random {
        let (client, server) = random_pair(&opts.generator, i as u64)?;
        let label = format!("random#{i}");
        if let Err(e) = fits(&client, &server, opts) {
            dropped.push(format!("{label}: {e}"));
            continue;
        }
        let client = compiler.add(&client)?;
        let server = compiler.add(&server)?;
        roots.push(Root {
            label,
            pair: PairState::new(client, server),
        });
    }

    let graph = Arc::new(compiler.finish(roots.first().map_or(crate::lts::StateId::ZERO, |r| r.pair.client))?);
    let comp = Composition::new(graph.clone(), graph);
    let root_pairs: Vec<PairState> = roots.iter().map(|r| r.pair).collect();
    let bound = opts.max_pairs.saturating_mul(root_pairs.len().max(1));
    let u = comp.build_universe(&root_pairs, bound)?;

    let (checks, rel) = check_universe(&u);
    let classification = rel
        .iter()
        .map(|(&k, x)| (k, classify(&u, x).expect("same universe")))
        .collect();
    let member = |k: RelationKind, r: &Root| rel[&k].contains(u.index_of(r.pair).expect("root"));
    let should_not_beh = roots
        .iter()
        .filter(|r| member(RelationKind::Should, r) && !member(RelationKind::Beh, r))
        .map(|r| r.label.clone())
        .collect();
    let beh_not_should = roots
        .iter()
        .filter(|r| member(RelationKind::Beh, r) && !member(RelationKind::Should, r))
        .map(|r| r.label.clone())
        .collect();

    Ok(VerifyReport {
        roots,
        dropped,
        universe_size: u.len(),
        checks,
        classification,
        should_not_beh,
        beh_not_should,
    })
}

/// Whether a pair compiles and its own universe stays within bounds.
fn fits(client: &Term, server: &Term, opts: &VerifyOptions) -> Result<()> {
    let mut c = Compiler::new(opts.max_states);
    let p = c.add(client)?;
    let q = c.add(server)?;
    let g = Arc::new(c.finish(p)?);
    Composition::new(g.clone(), g).build_universe(&[PairState::new(p, q)], opts.max_pairs)?;
    Ok(())
}
