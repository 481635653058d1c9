use std::fmt;

use crate::lts::Label;

/// Contract term: `0`, prefix, choice, guarded recursion and variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Nil,
    Prefix(Label, Box<Term>),
    Choice(Box<Term>, Box<Term>),
    Rec(String, Box<Term>),
    Var(String),
}

impl Term {
    pub fn prefix(label: Label, cont: Term) -> Term {
        Term::Prefix(label, Box::new(cont))
    }

    pub fn choice(left: Term, right: Term) -> Term {
        Term::Choice(Box::new(left), Box::new(right))
    }

    pub fn rec(var: impl Into<String>, body: Term) -> Term {
        Term::Rec(var.into(), Box::new(body))
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// Replaces free occurrences of `var` with `by`. `by` must be closed.
    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Nil => Term::Nil,
            Term::Var(x) if x == var => by.clone(),
            Term::Var(_) => self.clone(),
            Term::Prefix(l, c) => Term::prefix(l.clone(), c.substitute(var, by)),
            Term::Choice(a, b) => Term::choice(a.substitute(var, by), b.substitute(var, by)),
            Term::Rec(x, _) if x == var => self.clone(),
            Term::Rec(x, body) => Term::rec(x.clone(), body.substitute(var, by)),
        }
    }

    /// One-step unfolding of a top-level `rec`; other terms are returned as is.
    pub fn unfold(&self) -> Term {
        match self {
            Term::Rec(x, body) => body.substitute(x, self),
            _ => self.clone(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Nil | Term::Var(_) => 1,
            Term::Prefix(_, c) | Term::Rec(_, c) => 1 + c.size(),
            Term::Choice(a, b) => 1 + a.size() + b.size(),
        }
    }
}

// Printing mirrors the grammar: `+` is left-associative, prefixes bind
// tighter than `+`, and `rec` extends as far right as possible. A `rec` is
// therefore parenthesised unless nothing follows it.
impl Term {
    fn fmt_choice(&self, f: &mut fmt::Formatter<'_>, tail: bool) -> fmt::Result {
        match self {
            Term::Choice(a, b) => {
                a.fmt_choice(f, false)?;
                f.write_str(" + ")?;
                b.fmt_unary(f, tail)
            }
            _ => self.fmt_unary(f, tail),
        }
    }

    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>, tail: bool) -> fmt::Result {
        match self {
            Term::Nil => f.write_str("0"),
            Term::Var(x) => f.write_str(x),
            Term::Prefix(l, c) => {
                write!(f, "{l}.")?;
                c.fmt_unary(f, tail)
            }
            Term::Rec(x, body) if tail => {
                write!(f, "rec {x}.")?;
                body.fmt_choice(f, true)
            }
            Term::Rec(..) | Term::Choice(..) => {
                f.write_str("(")?;
                self.fmt_choice(f, true)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_choice(f, true)
    }
}

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// A named contract definition `name = term`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractDef {
    pub name: String,
    pub term: Term,
    pub span: Span,
}

impl fmt::Display for ContractDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.term)
    }
}
