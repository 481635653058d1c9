//! Recursive-descent parser for `.bc` contract files.
//!
//! ```text
//! file    := { def | comment | blank }
//! def     := NAME "=" term
//! term    := "0" | prefix "." term | term "+" term | "rec" VAR "." term | VAR | "(" term ")"
//! prefix  := "tau" | "?" NAME | "!" NAME
//! ```
//!
//! One definition per line; `#` starts a comment that runs to the end of the
//! line.

use std::collections::HashMap;

use super::ast::{ContractDef, Span, Term};
use crate::error::{Error, Result};
use crate::lts::Label;

const KEYWORDS: [&str; 2] = ["rec", "tau"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Dot,
    Plus,
    Eq,
    LParen,
    RParen,
    Query,
    Bang,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Query => "`?`".into(),
            Tok::Bang => "`!`".into(),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '.' => toks.push((Tok::Dot, col)),
            '+' => toks.push((Tok::Plus, col)),
            '=' => toks.push((Tok::Eq, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '?' => toks.push((Tok::Query, col)),
            '!' => toks.push((Tok::Bang, col)),
            '0' => {
                if chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    return Err(syntax(line, col, "identifiers must start with a letter"));
                }
                toks.push((Tok::Zero, col));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            c => return Err(syntax(line, col, format!("unexpected character `{c}`"))),
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        syntax(self.line, self.column(), message)
    }

    fn unexpected(&self, expected: &str) -> Error {
        match self.peek() {
            Some(t) => self.error(format!("expected {expected}, found {}", t.describe())),
            None => self.error(format!("expected {expected}, found end of line")),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// An identifier that is not a keyword.
    fn binder(&mut self, what: &str) -> Result<String> {
        let col = self.column();
        let name = self.ident(what)?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(syntax(self.line, col, format!("`{name}` is a keyword")));
        }
        Ok(name)
    }

    fn choice(&mut self) -> Result<Term> {
        let mut term = self.unary()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.unary()?;
            term = Term::choice(term, rhs);
        }
        Ok(term)
    }

    fn unary(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Nil)
            }
            Some(Tok::Query) | Some(Tok::Bang) => {
                let output = self.bump() == Some(Tok::Bang);
                let name = self.ident("an action name")?;
                let label = if output {
                    Label::output(name)
                } else {
                    Label::input(name)
                };
                self.expect(Tok::Dot)?;
                Ok(Term::prefix(label, self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.choice()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(s)) if s == "tau" => {
                self.pos += 1;
                self.expect(Tok::Dot)?;
                Ok(Term::prefix(Label::tau(), self.unary()?))
            }
            Some(Tok::Ident(s)) if s == "rec" => {
                self.pos += 1;
                let var = self.binder("a recursion variable")?;
                self.expect(Tok::Dot)?;
                Ok(Term::rec(var, self.choice()?))
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident("a variable")?)),
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses a single term, e.g. `!a.0 + ?b.0`.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        toks: tokenize(text, 1)?,
        pos: 0,
        line: 1,
        end_col: text.chars().count() + 1,
    };
    let t = p.choice()?;
    if p.peek().is_some() {
        return Err(p.unexpected("`+` or end of input"));
    }
    Ok(t)
}

/// Parses a contract file into its definitions, in source order.
pub fn parse(text: &str) -> Result<Vec<ContractDef>> {
    let mut defs = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser {
            toks,
            pos: 0,
            line,
            end_col: raw.chars().count() + 1,
        };
        let column = p.column();
        let name = p.binder("a contract name")?;
        p.expect(Tok::Eq)?;
        let term = p.choice()?;
        if p.peek().is_some() {
            return Err(p.unexpected("`+` or end of line"));
        }
        if seen.insert(name.clone(), line).is_some() {
            return Err(Error::DuplicateName { name, line });
        }
        defs.push(ContractDef {
            name,
            term,
            span: Span { line, column },
        });
    }
    Ok(defs)
}
