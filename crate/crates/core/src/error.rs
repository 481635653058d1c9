use thiserror::Error;

use crate::lts::StateId;

/// Errors raised by the contract toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state {0} is not part of the graph")]
    UnknownState(StateId),

    #[error("internal action has no dual")]
    NoDual,

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}: contract `{name}` is defined more than once")]
    DuplicateName { name: String, line: usize },

    #[error("term is ill-formed: {0}")]
    IllFormed(String),

    #[error("state explosion: more than {limit} states")]
    StateExplosion { limit: usize },

    #[error("pair explosion: more than {limit} composition pairs")]
    PairExplosion { limit: usize },

    #[error("pair ({client}, {server}) is not valid for this composition")]
    InvalidPair { client: StateId, server: StateId },

    #[error("pair set belongs to a different universe")]
    UniverseMismatch,

    #[error("corpus: {0}")]
    Corpus(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
