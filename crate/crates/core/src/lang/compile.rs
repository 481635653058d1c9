//! Well-formedness checking and compilation of terms to [`ContractGraph`]s.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::ast::Term;
use crate::error::{Error, Result};
use crate::lts::{ContractGraph, Edge, Label, StateId};

pub const DEFAULT_MAX_STATES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnboundVariable(String),
    UnguardedRecursion(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnboundVariable(x) => write!(f, "unbound variable `{x}`"),
            Violation::UnguardedRecursion(x) => write!(f, "unguarded recursion on `{x}`"),
        }
    }
}

/// Checks that `t` is closed and that every recursive call sits under a prefix.
pub fn well_formed(t: &Term) -> std::result::Result<(), Vec<Violation>> {
    fn walk<'a>(t: &'a Term, scope: &mut Vec<(&'a str, bool)>, out: &mut Vec<Violation>) {
        match t {
            Term::Nil => {}
            Term::Var(x) => match scope.iter().rev().find(|(v, _)| v == x) {
                None => out.push(Violation::UnboundVariable(x.clone())),
                Some((_, false)) => out.push(Violation::UnguardedRecursion(x.clone())),
                Some((_, true)) => {}
            },
            Term::Prefix(_, c) => {
                let mut guarded: Vec<_> = scope.iter().map(|(v, _)| (*v, true)).collect();
                walk(c, &mut guarded, out);
            }
            Term::Choice(a, b) => {
                walk(a, scope, out);
                walk(b, scope, out);
            }
            Term::Rec(x, body) => {
                scope.push((x, false));
                walk(body, scope, out);
                scope.pop();
            }
        }
    }
    let mut violations = Vec::new();
    walk(t, &mut Vec::new(), &mut violations);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Initial transitions of a well-formed term.
fn transitions(t: &Term, out: &mut Vec<(Label, Term)>) {
    match t {
        Term::Nil | Term::Var(_) => {}
        Term::Prefix(l, c) => out.push((l.clone(), (**c).clone())),
        Term::Choice(a, b) => {
            transitions(a, out);
            transitions(b, out);
        }
        Term::Rec(..) => transitions(&t.unfold(), out),
    }
}

/// Hash-consing compiler. Several contracts may be added to the same graph;
/// they then share the success state and any syntactically equal states.
#[derive(Debug)]
pub struct Compiler {
    max_states: usize,
    ids: HashMap<Term, StateId>,
    terms: Vec<Term>,
    edges: Vec<Edge>,
}

impl Compiler {
    /// `max_states` bounds the number of new states a single [`add`](Self::add) may create.
    pub fn new(max_states: usize) -> Self {
        Compiler {
            max_states,
            ids: HashMap::from([(Term::Nil, StateId::ZERO)]),
            terms: vec![Term::Nil],
            edges: Vec::new(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.terms.len()
    }

    /// The term a state was compiled from.
    pub fn term_of(&self, s: StateId) -> Option<&Term> {
        self.terms.get(s.index())
    }

    /// Adds `t` to the graph and returns its state. On error the compiler is
    /// left as it was before the call.
    pub fn add(&mut self, t: &Term) -> Result<StateId> {
        if let Err(v) = well_formed(t) {
            let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
            return Err(Error::IllFormed(msg.join(", ")));
        }
        let (old_terms, old_edges) = (self.terms.len(), self.edges.len());
        let result = self.explore(t);
        if result.is_err() {
            for t in self.terms.drain(old_terms..) {
                self.ids.remove(&t);
            }
            self.edges.truncate(old_edges);
        }
        result
    }

    fn explore(&mut self, t: &Term) -> Result<StateId> {
        let first_new = self.terms.len();
        let mut pending = VecDeque::new();
        let root = self.intern(t, first_new, &mut pending)?;
        while let Some((source, moves)) = pending.pop_front() {
            for (label, target) in moves {
                let target = self.intern(&target, first_new, &mut pending)?;
                self.edges.push(Edge::new(source, label, target));
            }
        }
        Ok(root)
    }

    fn intern(
        &mut self,
        t: &Term,
        first_new: usize,
        pending: &mut VecDeque<(StateId, Vec<(Label, Term)>)>,
    ) -> Result<StateId> {
        if let Some(&id) = self.ids.get(t) {
            return Ok(id);
        }
        let mut moves = Vec::new();
        transitions(t, &mut moves);
        // Terms such as `0 + 0` or `rec X.0` behave as `0`.
        if moves.is_empty() {
            self.ids.insert(t.clone(), StateId::ZERO);
            return Ok(StateId::ZERO);
        }
        if self.terms.len() - first_new >= self.max_states {
            return Err(Error::StateExplosion {
                limit: self.max_states,
            });
        }
        let id = StateId(self.terms.len() as u32);
        self.ids.insert(t.clone(), id);
        self.terms.push(t.clone());
        pending.push_back((id, moves));
        Ok(id)
    }

    /// Builds the graph, with `initial` as its initial state.
    pub fn finish(&self, initial: StateId) -> Result<ContractGraph> {
        ContractGraph::new(self.terms.len(), initial, self.edges.clone())
    }
}

/// Compiles a closed, guarded term into a finite graph.
pub fn compile(t: &Term, max_states: usize) -> Result<ContractGraph> {
    let mut c = Compiler::new(max_states);
    let init = c.add(t)?;
    c.finish(init)
}
