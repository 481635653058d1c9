//! Brute-force reference implementations used as test oracles. Everything
//! here works from the raw edge lists of the two graphs and explores
//! τ-paths directly; nothing goes through `PairUniverse` or the relation
//! evaluators.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use bcc_core::{
    compile, parse_term, random_pair, Composition, ContractGraph, GenConfig, LabelKind,
    PairState, PairUniverse, RelationKind, StateId, DEFAULT_MAX_STATES,
};

pub fn graph(src: &str) -> Arc<ContractGraph> {
    Arc::new(compile(&parse_term(src).unwrap(), DEFAULT_MAX_STATES).unwrap())
}

pub fn composition(client: &str, server: &str) -> Composition {
    Composition::new(graph(client), graph(server))
}

pub const PAIRS: [(&str, &str); 4] = [
    ("!a.0 + !b.0", "?a.0"),
    ("rec X.tau.!a.X", "rec Y.?a.Y"),
    ("!a.0 + !b.?c.0", "?a.0 + ?b.0"),
    ("!a.0", "rec Y.(tau.Y + ?a.0)"),
];

/// Random compositions whose universe has at most `max_pairs` pairs.
pub fn small_random_compositions(
    seed: u64,
    count: usize,
    max_depth: u32,
    max_pairs: usize,
) -> Vec<(Composition, PairUniverse)> {
    let cfg = GenConfig {
        seed,
        max_depth,
        ..GenConfig::default()
    };
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < count {
        let (c, s) = random_pair(&cfg, i).unwrap();
        i += 1;
        let comp = Composition::new(
            Arc::new(compile(&c, DEFAULT_MAX_STATES).unwrap()),
            Arc::new(compile(&s, DEFAULT_MAX_STATES).unwrap()),
        );
        if let Ok(u) = comp.build_universe(&[comp.initial()], max_pairs) {
            out.push((comp, u));
        }
    }
    out
}

/// Definitional checker over the raw graphs.
pub struct Oracle<'a> {
    pub client: &'a ContractGraph,
    pub server: &'a ContractGraph,
}

fn tau_targets(g: &ContractGraph, s: StateId) -> Vec<StateId> {
    g.edges()
        .iter()
        .filter(|e| e.source == s && e.label.kind() == LabelKind::Internal)
        .map(|e| e.target)
        .collect()
}

fn visible(g: &ContractGraph, s: StateId) -> Vec<(LabelKind, String, StateId)> {
    g.edges()
        .iter()
        .filter(|e| e.source == s && e.label.kind() != LabelKind::Internal)
        .map(|e| (e.label.kind(), e.label.name().to_string(), e.target))
        .collect()
}

/// States τ-reachable from `s` (depth-first).
pub fn tau_reach(g: &ContractGraph, s: StateId) -> BTreeSet<StateId> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        if seen.insert(x) {
            stack.extend(tau_targets(g, x));
        }
    }
    seen
}

/// Pigeonhole: a τ-path with more edges than states must revisit a state.
pub fn diverges(g: &ContractGraph, s: StateId) -> bool {
    fn walk(g: &ContractGraph, s: StateId, left: usize, dead: &mut HashSet<(StateId, usize)>) -> bool {
        if left == 0 {
            return true;
        }
        if dead.contains(&(s, left)) {
            return false;
        }
        let found = tau_targets(g, s).into_iter().any(|t| walk(g, t, left - 1, dead));
        if !found {
            dead.insert((s, left));
        }
        found
    }
    walk(g, s, g.num_states() + 1, &mut HashSet::new())
}

/// (weak input names, weak output names)
pub fn weak_barbs(g: &ContractGraph, s: StateId) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut inputs = BTreeSet::new();
    let mut outputs = BTreeSet::new();
    for t in tau_reach(g, s) {
        for (kind, name, _) in visible(g, t) {
            match kind {
                LabelKind::Input => inputs.insert(name),
                _ => outputs.insert(name),
            };
        }
    }
    (inputs, outputs)
}

impl<'a> Oracle<'a> {
    pub fn new(comp: &'a Composition) -> Self {
        Oracle {
            client: comp.client(),
            server: comp.server(),
        }
    }

    /// τ-successors straight from the three composition rules.
    pub fn tau_succ(&self, ps: PairState) -> BTreeSet<PairState> {
        let mut out = BTreeSet::new();
        for t in tau_targets(self.client, ps.client) {
            out.insert(PairState::new(t, ps.server));
        }
        for t in tau_targets(self.server, ps.server) {
            out.insert(PairState::new(ps.client, t));
        }
        for (ck, cn, ct) in visible(self.client, ps.client) {
            for (sk, sn, st) in visible(self.server, ps.server) {
                if cn == sn && ck != sk {
                    out.insert(PairState::new(ct, st));
                }
            }
        }
        out
    }

    fn successful(&self, ps: PairState) -> bool {
        ps.client == StateId::ZERO
    }

    pub fn reducts(&self, root: PairState) -> BTreeSet<PairState> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(self.tau_succ(x));
            }
        }
        seen
    }

    fn reaches_success(&self, from: PairState) -> bool {
        self.reducts(from).into_iter().any(|p| self.successful(p))
    }

    /// Every maximal τ-trace visits a successful pair. Explores every τ-path
    /// that avoids success; a stuck end or a revisit on the current path is
    /// a counterexample.
    fn must(&self, root: PairState) -> bool {
        fn explore(
            o: &Oracle<'_>,
            x: PairState,
            path: &mut Vec<PairState>,
            safe: &mut HashSet<PairState>,
        ) -> bool {
            if o.successful(x) || safe.contains(&x) {
                return true;
            }
            if path.contains(&x) {
                return false;
            }
            let succ = o.tau_succ(x);
            if succ.is_empty() {
                return false;
            }
            path.push(x);
            let ok = succ.into_iter().all(|y| explore(o, y, path, safe));
            path.pop();
            if ok {
                safe.insert(x);
            }
            ok
        }
        explore(self, root, &mut Vec::new(), &mut HashSet::new())
    }

    fn io_clause(&self, ps: PairState) -> bool {
        let (ci, co) = weak_barbs(self.client, ps.client);
        let (si, so) = weak_barbs(self.server, ps.server);
        let first = co.is_subset(&si);
        let second = !(co.is_empty() && !ci.is_empty()) || (!so.is_empty() && so.is_subset(&ci));
        first && second
    }

    pub fn holds(&self, root: PairState, kind: RelationKind) -> bool {
        let stuck_ok = |p: PairState| !self.tau_succ(p).is_empty() || self.successful(p);
        match kind {
            RelationKind::Progress => self.reducts(root).into_iter().all(stuck_ok),
            RelationKind::Must => self.must(root),
            RelationKind::Should => self
                .reducts(root)
                .into_iter()
                .all(|p| self.reaches_success(p)),
            RelationKind::Beh => self.reducts(root).into_iter().all(|p| {
                stuck_ok(p)
                    && (!diverges(self.server, p.server)
                        || tau_reach(self.client, p.client).contains(&StateId::ZERO))
            }),
            RelationKind::Io => self.reducts(root).into_iter().all(|p| self.io_clause(p)),
            RelationKind::May => self.reaches_success(root),
        }
    }

    /// Whether a witness path replays as τ-steps from `root`.
    pub fn is_tau_path(&self, root: PairState, path: &[PairState]) -> bool {
        path.first() == Some(&root) && path.windows(2).all(|w| self.tau_succ(w[0]).contains(&w[1]))
    }

    /// Whether `ps` violates the local clause checked at every reduct.
    pub fn violates(&self, ps: PairState, kind: RelationKind) -> bool {
        let stuck_bad = self.tau_succ(ps).is_empty() && !self.successful(ps);
        match kind {
            RelationKind::Progress => stuck_bad,
            RelationKind::Beh => {
                stuck_bad
                    || (diverges(self.server, ps.server)
                        && !tau_reach(self.client, ps.client).contains(&StateId::ZERO))
            }
            RelationKind::Io => !self.io_clause(ps),
            RelationKind::Should => !self.reaches_success(ps),
            RelationKind::Must | RelationKind::May => false,
        }
    }
}

/// Membership of every pair of `u` per the oracle.
pub fn oracle_table(comp: &Composition, u: &PairUniverse) -> HashMap<RelationKind, Vec<bool>> {
    let o = Oracle::new(comp);
    RelationKind::ALL
        .iter()
        .map(|&k| (k, u.pairs().iter().map(|&p| o.holds(p, k)).collect()))
        .collect()
}
