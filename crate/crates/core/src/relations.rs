//! Decision procedures for the six compliance relations.
//!
//! Every relation quantifies over τ-reducts of a composition, so each one is
//! decided on the pair universe reachable from the queried pair. The
//! universe-wide evaluators in this module decide the relation for every
//! pair at once; the `check_*` entry points add a witness path for the
//! queried pair.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::composition::{Composition, PairState, PairUniverse};
use crate::error::Result;
use crate::graph::{can_reach, on_cycle, shortest_path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RelationKind {
    Progress,
    Must,
    Should,
    Beh,
    Io,
    May,
}

impl RelationKind {
    /// All relations in presentation order.
    pub const ALL: [RelationKind; 6] = [
        RelationKind::Progress,
        RelationKind::Must,
        RelationKind::Should,
        RelationKind::Beh,
        RelationKind::Io,
        RelationKind::May,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            RelationKind::Progress => "pg",
            RelationKind::Must => "mst",
            RelationKind::Should => "shd",
            RelationKind::Beh => "beh",
            RelationKind::Io => "io",
            RelationKind::May => "may",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.short_name())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| format!("unknown relation `{s}` (expected pg, mst, shd, beh, io or may)"))
    }
}

/// Outcome of a relation check. For a failed progress, must, should,
/// behavioural or I/O check the witness is a τ-path from the root to a pair
/// violating the definition; a must witness that ends in a divergence
/// repeats its last pair. A successful may check carries the path to success.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: RelationKind,
    pub holds: bool,
    pub witness: Option<Vec<PairState>>,
}

/// Pairs of `u` whose own state violates the local clause of a relation
/// that must hold at every τ-reduct.
fn local_violations(u: &PairUniverse, kind: RelationKind) -> Vec<bool> {
    let comp = u.composition();
    let stuck_unsuccessful = |i: usize| u.is_stuck(i) && !u.is_successful(i);
    (0..u.len())
        .map(|i| match kind {
            RelationKind::Progress => stuck_unsuccessful(i),
            RelationKind::Beh => {
                let p = u.pair(i);
                stuck_unsuccessful(i)
                    || (comp.server().diverges_unchecked(p.server)
                        && !comp.client().reaches_zero_unchecked(p.client))
            }
            RelationKind::Io => !io_clause(comp, u.pair(i)),
            _ => unreachable!("{kind} has no local clause"),
        })
        .collect()
}

/// Both conjuncts of the I/O condition at a single pair.
fn io_clause(comp: &Composition, ps: PairState) -> bool {
    let client = comp.client().weak_barbs_unchecked(ps.client);
    let server = comp.server().weak_barbs_unchecked(ps.server);
    // dual(I(q')) as output names is just the set of input names of q'.
    if !client.outputs.is_subset(&server.inputs) {
        return false;
    }
    if client.outputs.is_empty() && !client.inputs.is_empty() {
        return !server.outputs.is_empty() && server.outputs.is_subset(&client.inputs);
    }
    true
}

/// Pairs from which a success pair is τ-reachable.
fn reaches_success(u: &PairUniverse) -> Vec<bool> {
    let successful: Vec<bool> = (0..u.len()).map(|i| u.is_successful(i)).collect();
    can_reach(u, &successful, |_| true)
}

/// Unsuccessful pairs that are stuck or lie on a τ-cycle avoiding success.
fn must_violations(u: &PairUniverse) -> Vec<bool> {
    let cyclic = on_cycle(u, |i| !u.is_successful(i));
    (0..u.len())
        .map(|i| !u.is_successful(i) && (u.is_stuck(i) || cyclic[i]))
        .collect()
}

/// Decides `kind` for every pair of `u`, each pair taken as a root.
pub fn evaluate(u: &PairUniverse, kind: RelationKind) -> Vec<bool> {
    let negate = |v: Vec<bool>| v.into_iter().map(|b| !b).collect();
    match kind {
        RelationKind::Progress | RelationKind::Beh | RelationKind::Io => {
            negate(can_reach(u, &local_violations(u, kind), |_| true))
        }
        RelationKind::Must => {
            let bad = must_violations(u);
            negate(can_reach(u, &bad, |i| !u.is_successful(i)))
        }
        RelationKind::Should => {
            let doomed: Vec<bool> = negate(reaches_success(u));
            negate(can_reach(u, &doomed, |_| true))
        }
        RelationKind::May => reaches_success(u),
    }
}

/// Decides `kind` for the pair at index `root` of `u`, with a witness.
pub fn check_in(u: &PairUniverse, root: usize, kind: RelationKind) -> Verdict {
    let holds = evaluate(u, kind)[root];
    let path = match kind {
        _ if holds && kind != RelationKind::May => None,
        RelationKind::Progress | RelationKind::Beh | RelationKind::Io => {
            let bad = local_violations(u, kind);
            shortest_path(u, root, |i| bad[i], |_| true)
        }
        RelationKind::Should => {
            let reach = reaches_success(u);
            shortest_path(u, root, |i| !reach[i], |_| true)
        }
        RelationKind::Must => must_witness(u, root),
        RelationKind::May if holds => shortest_path(u, root, |i| u.is_successful(i), |_| true),
        RelationKind::May => None,
    };
    Verdict {
        kind,
        holds,
        witness: path.map(|p| p.into_iter().map(|i| u.pair(i)).collect()),
    }
}

/// Path through unsuccessful pairs to a stuck pair, or a lasso ending in a
/// τ-cycle that avoids success.
fn must_witness(u: &PairUniverse, root: usize) -> Option<Vec<usize>> {
    let bad = must_violations(u);
    let unsuccessful = |i: usize| !u.is_successful(i);
    let mut path = shortest_path(u, root, |i| bad[i], unsuccessful)?;
    let last = *path.last().expect("non-empty path");
    if !u.is_stuck(last) {
        // `last` is on a cycle: walk it back to itself.
        let cycle = u
            .successors(last)
            .iter()
            .filter(|&&s| unsuccessful(s))
            .filter_map(|&s| shortest_path(u, s, |i| i == last, unsuccessful))
            .min_by_key(Vec::len)
            .expect("pair lies on a cycle");
        path.extend(cycle);
    }
    Some(path)
}

/// Decides `kind` for `root` on the universe reachable from it.
pub fn check(comp: &Composition, root: PairState, kind: RelationKind, max_pairs: usize) -> Result<Verdict> {
    let u = comp.build_universe(&[root], max_pairs)?;
    Ok(check_in(&u, 0, kind))
}

/// Checks every relation in `kinds` on one shared universe.
pub fn check_all(
    comp: &Composition,
    root: PairState,
    kinds: &[RelationKind],
    max_pairs: usize,
) -> Result<Vec<Verdict>> {
    let u = comp.build_universe(&[root], max_pairs)?;
    Ok(kinds.iter().map(|&k| check_in(&u, 0, k)).collect())
}

/// Every stuck τ-reduct is successful.
pub fn check_progress(comp: &Composition, max_pairs: usize) -> Result<Verdict> {
    check(comp, comp.initial(), RelationKind::Progress, max_pairs)
}

/// Every maximal τ-trace, finite or infinite, visits a successful pair.
pub fn check_must(comp: &Composition, max_pairs: usize) -> Result<Verdict> {
    check(comp, comp.initial(), RelationKind::Must, max_pairs)
}

/// From every τ-reduct some successful pair stays τ-reachable.
pub fn check_should(comp: &Composition, max_pairs: usize) -> Result<Verdict> {
    check(comp, comp.initial(), RelationKind::Should, max_pairs)
}

/// Progress, plus: wherever the server may diverge on its own, the client
/// can reach `0` through its own τ-moves.
pub fn check_beh(comp: &Composition, max_pairs: usize) -> Result<Verdict> {
    check(comp, comp.initial(), RelationKind::Beh, max_pairs)
}

/// At every τ-reduct the client's weak outputs are accepted by the server,
/// and a client waiting only on inputs is offered some of them.
pub fn check_io(comp: &Composition, max_pairs: usize) -> Result<Verdict> {
    check(comp, comp.initial(), RelationKind::Io, max_pairs)
}

/// Some successful pair is τ-reachable.
pub fn check_may(comp: &Composition, max_pairs: usize) -> Result<Verdict> {
    check(comp, comp.initial(), RelationKind::May, max_pairs)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lang::{compile, parse_term, DEFAULT_MAX_STATES};
    use crate::lts::StateId;

    fn comp(client: &str, server: &str) -> Composition {
        let g = |s| Arc::new(compile(&parse_term(s).unwrap(), DEFAULT_MAX_STATES).unwrap());
        Composition::new(g(client), g(server))
    }

    fn verdicts(client: &str, server: &str) -> Vec<bool> {
        let c = comp(client, server);
        check_all(&c, c.initial(), &RelationKind::ALL, 100)
            .unwrap()
            .into_iter()
            .map(|v| v.holds)
            .collect()
    }

    #[test]
    fn names_round_trip() {
        for k in RelationKind::ALL {
            assert_eq!(k.short_name().parse::<RelationKind>(), Ok(k));
        }
        assert!("progress".parse::<RelationKind>().is_err());
    }

    #[test]
    fn zero_client_satisfies_everything_but_io_may_fail() {
        // 0 against a server that keeps outputting: every reduct is successful.
        assert_eq!(verdicts("0", "rec X.!a.X"), vec![true; 6]);
        assert_eq!(verdicts("0", "rec X.tau.X"), vec![true; 6]);
    }

    #[test]
    fn tau_to_zero_is_must_compliant() {
        let c = comp("tau.0", "0");
        let v = check_must(&c, 10).unwrap();
        assert!(v.holds);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn must_witness_is_a_lasso() {
        let c = comp("rec X.tau.!a.X", "rec Y.?a.Y");
        let v = check_must(&c, 10).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.first(), Some(&c.initial()));
        assert_eq!(w.first(), w.last());
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn stuck_root_fails_must_and_progress() {
        let c = comp("!a.0", "!a.0");
        let v = check_must(&c, 10).unwrap();
        assert_eq!(v.witness, Some(vec![c.initial()]));
        assert!(!check_progress(&c, 10).unwrap().holds);
        assert!(!check_may(&c, 10).unwrap().holds);
        assert_eq!(check_may(&c, 10).unwrap().witness, None);
    }

    #[test]
    fn may_witness_reaches_success() {
        let c = comp("!a.0 + !b.?c.0", "?a.0 + ?b.0");
        let v = check_may(&c, 10).unwrap();
        assert!(v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.last().unwrap().client, StateId::ZERO);
    }

    #[test]
    fn beh_looks_at_client_and_server_separately() {
        // Server diverges but the client can terminate alone.
        assert!(verdicts("tau.0 + !a.0", "rec Y.(tau.Y + ?a.0)")[3]);
        // Client has a τ-path to 0 only through synchronisation: not enough.
        assert!(!verdicts("!a.0", "rec Y.(tau.Y + ?a.0)")[3]);
    }

    #[test]
    fn io_second_conjunct() {
        // Waiting client, server offers the right output.
        assert!(verdicts("?a.0", "!a.0")[4]);
        // Waiting client, server offers a wrong output.
        assert!(!verdicts("?a.0", "!a.0 + !b.0")[4]);
        // Waiting client, silent server.
        assert!(!verdicts("?a.0", "?b.0")[4]);
    }
}
