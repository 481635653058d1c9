//! Compliance relations between behavioural contracts.
//!
//! Contracts are finite labelled transition systems with inputs `?a`,
//! outputs `!a`, the internal action `tau` and a unique success state `0`.
//! A client and a server are composed CCS-style; six compliance relations
//! (progress, must, should, behavioural, I/O, may) are decided on the
//! τ-reachable part of the composition. The [`fixpoint`] module iterates the
//! compliance functional on the same finite carrier, so its least and
//! greatest fixed points can be compared against the relations directly.
//!
//! ```
//! use std::sync::Arc;
//! use bcc_core::{compile, parse_term, check_all, Composition, RelationKind};
//!
//! let client = Arc::new(compile(&parse_term("!a.0 + !b.0").unwrap(), 64).unwrap());
//! let server = Arc::new(compile(&parse_term("?a.0").unwrap(), 64).unwrap());
//! let comp = Composition::new(client, server);
//! let verdicts = check_all(&comp, comp.initial(), &RelationKind::ALL, 256).unwrap();
//! let holds: Vec<bool> = verdicts.iter().map(|v| v.holds).collect();
//! assert_eq!(holds, [true, true, true, true, false, true]);
//! ```

pub mod composition;
pub mod corpus;
mod error;
pub mod fixpoint;
pub mod generator;
mod graph;
pub mod lang;
pub mod lts;
pub mod relations;
pub mod verify;

pub use composition::{Composition, PairState, PairUniverse, DEFAULT_MAX_PAIRS};
pub use corpus::{CompiledCorpus, Corpus, CorpusPair};
pub use error::{Error, Result};
pub use fixpoint::{apply_f, classify, gfp, lfp, restrict, Classification, PairSet};
pub use generator::{random_contract, random_pair, GenConfig};
pub use lang::{compile, parse, parse_term, well_formed, Compiler, ContractDef, Term, DEFAULT_MAX_STATES};
pub use lts::{BarbSet, ContractGraph, Edge, Label, LabelKind, StateId};
pub use relations::{check, check_all, check_in, evaluate, RelationKind, Verdict};
