//! The compliance functional on the powerset of a finite pair universe.
//!
//! `F(X) = S ∪ { ps | ps has a τ-move and every τ-successor of ps is in X }`
//! where `S` is the set of successful pairs. `F` is monotone, so iterating it
//! from `∅` reaches its least fixed point and iterating from the whole
//! universe reaches its greatest one.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::composition::{PairState, PairUniverse};
use crate::error::{Error, Result};
use crate::relations::{evaluate, RelationKind};

/// A subset of the pairs of one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    universe: u64,
    bits: FixedBitSet,
}

impl PairSet {
    pub fn empty(u: &PairUniverse) -> Self {
        PairSet {
            universe: u.id(),
            bits: FixedBitSet::with_capacity(u.len()),
        }
    }

    pub fn full(u: &PairUniverse) -> Self {
        let mut s = Self::empty(u);
        s.bits.insert_range(..);
        s
    }

    pub fn from_fn(u: &PairUniverse, mut member: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(u);
        for i in 0..u.len() {
            s.bits.set(i, member(i));
        }
        s
    }

    /// The successful pairs of `u`.
    pub fn successful(u: &PairUniverse) -> Self {
        Self::from_fn(u, |i| u.is_successful(i))
    }

    pub fn universe_id(&self) -> u64 {
        self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Indices in `self` but not in `other`.
    pub fn difference(&self, other: &PairSet) -> Vec<usize> {
        self.bits.difference(&other.bits).collect()
    }

    pub fn pairs(&self, u: &PairUniverse) -> Vec<PairState> {
        self.iter().map(|i| u.pair(i)).collect()
    }

    fn check(&self, u: &PairUniverse) -> Result<()> {
        if self.universe == u.id() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }
}

/// One application of the compliance functional.
pub fn apply_f(u: &PairUniverse, x: &PairSet) -> Result<PairSet> {
    x.check(u)?;
    Ok(PairSet::from_fn(u, |i| {
        u.is_successful(i) || {
            let succ = u.successors(i);
            !succ.is_empty() && succ.iter().all(|&t| x.contains(t))
        }
    }))
}

/// Iterates `F` from `start` until it stabilises. Returns the limit and the
/// number of applications of `F`.
pub fn iterate(u: &PairUniverse, start: PairSet) -> Result<(PairSet, usize)> {
    let mut current = start;
    let mut rounds = 0;
    loop {
        let next = apply_f(u, &current)?;
        rounds += 1;
        if next == current {
            return Ok((current, rounds));
        }
        current = next;
    }
}

/// Least fixed point of `F`, iterated from the empty set.
pub fn lfp(u: &PairUniverse) -> PairSet {
    iterate(u, PairSet::empty(u)).expect("same universe").0
}

/// Greatest fixed point of `F`, iterated down from the whole universe.
pub fn gfp(u: &PairUniverse) -> PairSet {
    iterate(u, PairSet::full(u)).expect("same universe").0
}

/// The pairs of `u` related by `kind`, each pair taken as a root.
pub fn restrict(u: &PairUniverse, kind: RelationKind) -> PairSet {
    let members = evaluate(u, kind);
    PairSet::from_fn(u, |i| members[i])
}

/// Where a relation sits with respect to `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_pre: bool,
    pub is_post: bool,
    pub is_fix: bool,
    /// Pairs in `F(X)` but not in `X`.
    pub pre_counterexamples: Vec<PairState>,
    /// Pairs in `X` but not in `F(X)`.
    pub post_counterexamples: Vec<PairState>,
}

/// Classifies `x` as a pre-, post- and/or fixed point of `F`.
pub fn classify(u: &PairUniverse, x: &PairSet) -> Result<Classification> {
    let fx = apply_f(u, x)?;
    let pre_counterexamples: Vec<PairState> = fx.difference(x).into_iter().map(|i| u.pair(i)).collect();
    let post_counterexamples: Vec<PairState> = x.difference(&fx).into_iter().map(|i| u.pair(i)).collect();
    let is_pre = pre_counterexamples.is_empty();
    let is_post = post_counterexamples.is_empty();
    Ok(Classification {
        is_pre,
        is_post,
        is_fix: is_pre && is_post,
        pre_counterexamples,
        post_counterexamples,
    })
}
