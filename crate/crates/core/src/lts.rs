//! Finite labelled transition graphs for single contracts.
//!
//! A [`ContractGraph`] is immutable once built. The τ-closure, weak barbs,
//! divergence and success reachability of every state are computed at
//! construction time, so all queries are plain lookups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense state identifier. The success state `0` always has id 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct StateId(pub u32);

impl StateId {
    pub const ZERO: StateId = StateId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    Internal,
    Input,
    Output,
}

/// A transition label: `tau`, `?a` or `!a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    kind: LabelKind,
    name: String,
}

impl Label {
    pub fn tau() -> Self {
        Label {
            kind: LabelKind::Internal,
            name: String::new(),
        }
    }

    pub fn input(name: impl Into<String>) -> Self {
        Label {
            kind: LabelKind::Input,
            name: name.into(),
        }
    }

    pub fn output(name: impl Into<String>) -> Self {
        Label {
            kind: LabelKind::Output,
            name: name.into(),
        }
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    /// Action name; empty for `tau`.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_tau(&self) -> bool {
        self.kind == LabelKind::Internal
    }

    /// The co-action: `?a` for `!a` and vice versa.
    pub fn dual(&self) -> Result<Label> {
        match self.kind {
            LabelKind::Internal => Err(Error::NoDual),
            LabelKind::Input => Ok(Label::output(self.name.clone())),
            LabelKind::Output => Ok(Label::input(self.name.clone())),
        }
    }

    /// True when `self` and `other` are visible and complementary.
    pub fn is_dual_of(&self, other: &Label) -> bool {
        self.name == other.name
            && matches!(
                (self.kind, other.kind),
                (LabelKind::Input, LabelKind::Output) | (LabelKind::Output, LabelKind::Input)
            )
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LabelKind::Internal => f.write_str("tau"),
            LabelKind::Input => write!(f, "?{}", self.name),
            LabelKind::Output => write!(f, "!{}", self.name),
        }
    }
}

/// Input and output action names offered by a state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BarbSet {
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
}

impl BarbSet {
    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty()
    }

    pub fn is_subset(&self, other: &BarbSet) -> bool {
        self.inputs.is_subset(&other.inputs) && self.outputs.is_subset(&other.outputs)
    }

    fn insert(&mut self, label: &Label) {
        match label.kind {
            LabelKind::Internal => {}
            LabelKind::Input => {
                self.inputs.insert(label.name.clone());
            }
            LabelKind::Output => {
                self.outputs.insert(label.name.clone());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: StateId,
    pub label: Label,
    pub target: StateId,
}

impl Edge {
    pub fn new(source: StateId, label: Label, target: StateId) -> Self {
        Edge {
            source,
            label,
            target,
        }
    }

    fn sort_key(&self) -> (StateId, LabelKind, &str, StateId) {
        (self.source, self.label.kind, &self.label.name, self.target)
    }
}

/// A finite LTS with an initial state and the unique sink `0` (id 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractGraph {
    initial: StateId,
    /// Sorted by (source, label kind, action name, target).
    edges: Vec<Edge>,
    /// Edges of state `s` are `edges[offsets[s]..offsets[s + 1]]`.
    offsets: Vec<usize>,
    closure: Vec<Vec<StateId>>,
    strong_barbs: Vec<BarbSet>,
    weak_barbs: Vec<BarbSet>,
    diverges: Vec<bool>,
}

impl ContractGraph {
    /// Builds a graph over states `0..num_states`, state 0 being the success
    /// state. Duplicate edges are dropped.
    pub fn new(num_states: usize, initial: StateId, mut edges: Vec<Edge>) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::MalformedGraph("graph has no states".into()));
        }
        if num_states > u32::MAX as usize {
            return Err(Error::MalformedGraph("too many states".into()));
        }
        if initial.index() >= num_states {
            return Err(Error::UnknownState(initial));
        }
        for e in &edges {
            for s in [e.source, e.target] {
                if s.index() >= num_states {
                    return Err(Error::UnknownState(s));
                }
            }
            if !e.label.is_tau() && e.label.name.is_empty() {
                return Err(Error::MalformedGraph("visible label without a name".into()));
            }
        }
        edges.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        edges.dedup();

        let mut offsets = vec![0; num_states + 1];
        for e in &edges {
            offsets[e.source.index() + 1] += 1;
        }
        for i in 0..num_states {
            offsets[i + 1] += offsets[i];
        }
        if offsets[1] != 0 {
            return Err(Error::MalformedGraph(
                "the success state 0 has outgoing edges".into(),
            ));
        }
        if let Some(s) = (1..num_states).find(|&s| offsets[s] == offsets[s + 1]) {
            return Err(Error::MalformedGraph(format!(
                "state {s} has no outgoing edges but is not the success state 0"
            )));
        }

        let mut graph = ContractGraph {
            initial,
            edges,
            offsets,
            closure: Vec::new(),
            strong_barbs: Vec::new(),
            weak_barbs: Vec::new(),
            diverges: Vec::new(),
        };
        graph.precompute();
        Ok(graph)
    }

    fn precompute(&mut self) {
        let n = self.num_states();
        self.closure = (0..n).map(|s| self.compute_closure(StateId(s as u32))).collect();

        self.strong_barbs = (0..n)
            .map(|s| {
                let mut barbs = BarbSet::default();
                for e in self.out(StateId(s as u32)) {
                    barbs.insert(&e.label);
                }
                barbs
            })
            .collect();

        self.weak_barbs = self
            .closure
            .iter()
            .map(|reach| {
                let mut barbs = BarbSet::default();
                for t in reach {
                    let strong = &self.strong_barbs[t.index()];
                    barbs.inputs.extend(strong.inputs.iter().cloned());
                    barbs.outputs.extend(strong.outputs.iter().cloned());
                }
                barbs
            })
            .collect();

        // A state lies on a τ-cycle iff it is in the closure of one of its
        // own τ-successors.
        let on_cycle: Vec<bool> = (0..n)
            .map(|s| {
                let s = StateId(s as u32);
                self.out(s)
                    .iter()
                    .filter(|e| e.label.is_tau())
                    .any(|e| self.closure[e.target.index()].binary_search(&s).is_ok())
            })
            .collect();
        self.diverges = self
            .closure
            .iter()
            .map(|reach| reach.iter().any(|t| on_cycle[t.index()]))
            .collect();
    }

    fn compute_closure(&self, start: StateId) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([start]);
        seen[start.index()] = true;
        let mut reach = Vec::new();
        while let Some(s) = queue.pop_front() {
            reach.push(s);
            for e in self.out(s).iter().filter(|e| e.label.is_tau()) {
                if !seen[e.target.index()] {
                    seen[e.target.index()] = true;
                    queue.push_back(e.target);
                }
            }
        }
        reach.sort();
        reach
    }

    pub fn num_states(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states() as u32).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn zero(&self) -> StateId {
        StateId::ZERO
    }

    pub fn contains(&self, s: StateId) -> bool {
        s.index() < self.num_states()
    }

    /// All edges in deterministic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn check(&self, s: StateId) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::UnknownState(s))
        }
    }

    /// Outgoing edges of a state known to be valid.
    pub(crate) fn out(&self, s: StateId) -> &[Edge] {
        &self.edges[self.offsets[s.index()]..self.offsets[s.index() + 1]]
    }

    pub fn edges_from(&self, s: StateId) -> Result<&[Edge]> {
        self.check(s)?;
        Ok(self.out(s))
    }

    /// Targets of `label`-edges out of `s`, ordered by id.
    pub fn successors(&self, s: StateId, label: &Label) -> Result<Vec<StateId>> {
        self.check(s)?;
        let mut targets: Vec<StateId> = self
            .out(s)
            .iter()
            .filter(|e| &e.label == label)
            .map(|e| e.target)
            .collect();
        targets.sort();
        targets.dedup();
        Ok(targets)
    }

    /// States reachable from `s` through zero or more τ-edges, ordered by id.
    pub fn tau_closure(&self, s: StateId) -> Result<&[StateId]> {
        self.check(s)?;
        Ok(&self.closure[s.index()])
    }

    pub fn barbs(&self, s: StateId) -> Result<&BarbSet> {
        self.check(s)?;
        Ok(&self.strong_barbs[s.index()])
    }

    pub fn weak_barbs(&self, s: StateId) -> Result<&BarbSet> {
        self.check(s)?;
        Ok(&self.weak_barbs[s.index()])
    }

    /// Whether `s` has an infinite τ-only computation.
    pub fn may_diverge(&self, s: StateId) -> Result<bool> {
        self.check(s)?;
        Ok(self.diverges[s.index()])
    }

    /// Whether `s` reaches `0` through τ-edges alone.
    pub fn weak_reaches_zero(&self, s: StateId) -> Result<bool> {
        self.check(s)?;
        Ok(self.reaches_zero_unchecked(s))
    }

    pub(crate) fn reaches_zero_unchecked(&self, s: StateId) -> bool {
        self.closure[s.index()].first() == Some(&StateId::ZERO)
    }

    pub(crate) fn diverges_unchecked(&self, s: StateId) -> bool {
        self.diverges[s.index()]
    }

    pub(crate) fn weak_barbs_unchecked(&self, s: StateId) -> &BarbSet {
        &self.weak_barbs[s.index()]
    }
}
