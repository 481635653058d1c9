//! Client ‖ server composition and τ-closed pair universes.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lts::{ContractGraph, Label, StateId};

pub const DEFAULT_MAX_PAIRS: usize = 4096;

/// A composition state `client ‖ server`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairState {
    pub client: StateId,
    pub server: StateId,
}

impl PairState {
    pub fn new(client: StateId, server: StateId) -> Self {
        PairState { client, server }
    }
}

impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ‖ {}", self.client, self.server)
    }
}

/// The two graphs a composition ranges over. Client and server may share
/// the same graph.
#[derive(Debug, Clone)]
pub struct Composition {
    client: Arc<ContractGraph>,
    server: Arc<ContractGraph>,
}

impl Composition {
    pub fn new(client: Arc<ContractGraph>, server: Arc<ContractGraph>) -> Self {
        Composition { client, server }
    }

    pub fn client(&self) -> &ContractGraph {
        &self.client
    }

    pub fn server(&self) -> &ContractGraph {
        &self.server
    }

    /// The pair of both initial states.
    pub fn initial(&self) -> PairState {
        PairState::new(self.client.initial(), self.server.initial())
    }

    fn check(&self, ps: PairState) -> Result<()> {
        if self.client.contains(ps.client) && self.server.contains(ps.server) {
            Ok(())
        } else {
            Err(Error::InvalidPair {
                client: ps.client,
                server: ps.server,
            })
        }
    }

    /// All moves of `ps`: autonomous client moves, autonomous server moves,
    /// and a τ for every pair of complementary visible edges. Sorted by
    /// label, then target.
    pub fn compose_step(&self, ps: PairState) -> Result<Vec<(Label, PairState)>> {
        self.check(ps)?;
        let client_edges = self.client.out(ps.client);
        let server_edges = self.server.out(ps.server);
        let mut moves = Vec::with_capacity(client_edges.len() + server_edges.len());
        for e in client_edges {
            moves.push((e.label.clone(), PairState::new(e.target, ps.server)));
        }
        for e in server_edges {
            moves.push((e.label.clone(), PairState::new(ps.client, e.target)));
        }
        for c in client_edges.iter().filter(|e| !e.label.is_tau()) {
            for s in server_edges.iter().filter(|e| e.label.is_dual_of(&c.label)) {
                moves.push((Label::tau(), PairState::new(c.target, s.target)));
            }
        }
        moves.sort();
        moves.dedup();
        Ok(moves)
    }

    /// Targets of the τ-moves of `ps`, sorted by (client, server).
    pub fn tau_successors(&self, ps: PairState) -> Result<Vec<PairState>> {
        self.check(ps)?;
        Ok(self.tau_successors_unchecked(ps))
    }

    fn tau_successors_unchecked(&self, ps: PairState) -> Vec<PairState> {
        let client_edges = self.client.out(ps.client);
        let server_edges = self.server.out(ps.server);
        let mut succ = Vec::new();
        for e in client_edges.iter().filter(|e| e.label.is_tau()) {
            succ.push(PairState::new(e.target, ps.server));
        }
        for e in server_edges.iter().filter(|e| e.label.is_tau()) {
            succ.push(PairState::new(ps.client, e.target));
        }
        for c in client_edges.iter().filter(|e| !e.label.is_tau()) {
            for s in server_edges.iter().filter(|e| e.label.is_dual_of(&c.label)) {
                succ.push(PairState::new(c.target, s.target));
            }
        }
        succ.sort();
        succ.dedup();
        succ
    }

    /// Whether the client has reached `0`.
    pub fn is_successful(&self, ps: PairState) -> Result<bool> {
        self.check(ps)?;
        Ok(ps.client == self.client.zero())
    }

    /// Whether the composition has no τ-move (synchronisations included).
    pub fn is_stuck(&self, ps: PairState) -> Result<bool> {
        Ok(self.tau_successors(ps)?.is_empty())
    }

    /// Least τ-successor-closed set of pairs containing `roots`. Pairs are
    /// numbered in BFS order from the roots as listed.
    pub fn build_universe(&self, roots: &[PairState], max_pairs: usize) -> Result<PairUniverse> {
        static NEXT_ID: AtomicU64 = AtomicU64::new(0);

        let mut pairs = Vec::new();
        let mut index = HashMap::new();
        let mut queue = VecDeque::new();
        let mut visit = |ps: PairState, pairs: &mut Vec<PairState>, queue: &mut VecDeque<usize>| {
            if let Some(&i) = index.get(&ps) {
                return Ok(i);
            }
            if pairs.len() >= max_pairs {
                return Err(Error::PairExplosion { limit: max_pairs });
            }
            let i = pairs.len();
            pairs.push(ps);
            index.insert(ps, i);
            queue.push_back(i);
            Ok(i)
        };

        let mut root_ids = Vec::new();
        for &r in roots {
            self.check(r)?;
            let i = visit(r, &mut pairs, &mut queue)?;
            if !root_ids.contains(&i) {
                root_ids.push(i);
            }
        }
        let mut succ: Vec<Vec<usize>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let targets = self.tau_successors_unchecked(pairs[i]);
            let mut ids = Vec::with_capacity(targets.len());
            for t in targets {
                ids.push(visit(t, &mut pairs, &mut queue)?);
            }
            ids.sort_unstable();
            if succ.len() <= i {
                succ.resize(i + 1, Vec::new());
            }
            succ[i] = ids;
        }
        succ.resize(pairs.len(), Vec::new());

        let mut pred = vec![Vec::new(); pairs.len()];
        for (i, targets) in succ.iter().enumerate() {
            for &t in targets {
                pred[t].push(i);
            }
        }
        let successful = pairs.iter().map(|p| p.client == StateId::ZERO).collect();
        Ok(PairUniverse {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            composition: self.clone(),
            index,
            pairs,
            roots: root_ids,
            succ,
            pred,
            successful,
        })
    }
}

/// A finite, τ-successor-closed set of pairs with its τ-edge graph. This is
/// the carrier on which the compliance functional is iterated.
#[derive(Debug, Clone)]
pub struct PairUniverse {
    id: u64,
    composition: Composition,
    pairs: Vec<PairState>,
    index: HashMap<PairState, usize>,
    roots: Vec<usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    successful: Vec<bool>,
}

impl PairUniverse {
    /// Identity used to reject pair sets from other universes.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[PairState] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> PairState {
        self.pairs[i]
    }

    pub fn index_of(&self, ps: PairState) -> Option<usize> {
        self.index.get(&ps).copied()
    }

    pub fn contains(&self, ps: PairState) -> bool {
        self.index.contains_key(&ps)
    }

    /// Indices of the roots the universe was built from, in listed order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// τ-successors of pair `i`, as sorted indices.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn is_successful(&self, i: usize) -> bool {
        self.successful[i]
    }

    pub fn is_stuck(&self, i: usize) -> bool {
        self.succ[i].is_empty()
    }

    pub fn tau_edges(&self) -> impl Iterator<Item = (PairState, PairState)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(move |(i, ts)| ts.iter().map(move |&t| (self.pairs[i], self.pairs[t])))
    }

    /// Graphviz rendering. Successful pairs are double circles, τ-edges
    /// solid and visible moves between members dashed.
    pub fn to_dot(&self, client_name: &str, server_name: &str) -> String {
        let mut out = String::from("digraph universe {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, p) in self.pairs.iter().enumerate() {
            let shape = if self.successful[i] { "doublecircle" } else { "circle" };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}.{} ‖ {}.{}\", shape={shape}];",
                escape(client_name),
                p.client,
                escape(server_name),
                p.server
            );
        }
        for (k, &r) in self.roots.iter().enumerate() {
            let _ = writeln!(out, "  start{k} [shape=point];\n  start{k} -> n{r};");
        }
        for (i, &p) in self.pairs.iter().enumerate() {
            let moves = self
                .composition
                .compose_step(p)
                .expect("universe pairs are valid");
            let mut last_tau = None;
            for (label, target) in moves {
                let Some(t) = self.index_of(target) else { continue };
                if label.is_tau() {
                    // Several synchronisations may lead to the same pair.
                    if last_tau == Some(t) {
                        continue;
                    }
                    last_tau = Some(t);
                    let _ = writeln!(out, "  n{i} -> n{t} [label=\"tau\"];");
                } else {
                    let _ = writeln!(out, "  n{i} -> n{t} [label=\"{label}\", style=dashed];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
