//! Textual contract language: terms, parsing, printing and compilation.

mod ast;
mod compile;
mod parse;

pub use ast::{ContractDef, Span, Term};
pub use compile::{compile, well_formed, Compiler, Violation, DEFAULT_MAX_STATES};
pub use parse::{parse, parse_term};
