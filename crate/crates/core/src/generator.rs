//! Seeded generation of closed, guarded contract terms.
//!
//! The random source is ChaCha8 seeded with `seed_from_u64(seed)`. Streams
//! split it: [`random_contract`] uses stream 0 and [`random_pair`] uses
//! streams `2i + 1` (client) and `2i + 2` (server) for pair `i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lang::Term;
use crate::lts::Label;

/// Attempts at producing a `rec` body that uses its variable.
const REC_RETRIES: usize = 8;

/// Share of the remaining probability mass, after `rec` and `+`, given to
/// prefixes. The rest goes to `0` or a variable.
const PREFIX_SHARE: f64 = 0.7;

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_depth: u32,
    pub alphabet: Vec<String>,
    pub rec_probability: f64,
    pub choice_probability: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_depth: 6,
            alphabet: vec!["a".into(), "b".into(), "c".into()],
            rec_probability: 0.15,
            choice_probability: 0.25,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::IllFormed(format!("generator config: {msg}")));
        if self.alphabet.is_empty() {
            return bad("empty alphabet");
        }
        for a in &self.alphabet {
            let mut chars = a.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return bad(&format!("invalid action name `{a}`"));
            }
        }
        let p = [self.rec_probability, self.choice_probability];
        if p.iter().any(|p| !(0.0..=1.0).contains(p)) || p[0] + p[1] > 1.0 {
            return bad("probabilities must lie in [0, 1] and sum to at most 1");
        }
        Ok(())
    }
}

struct Gen<'a> {
    cfg: &'a GenConfig,
    rng: ChaCha8Rng,
    next_var: usize,
}

impl Gen<'_> {
    /// `scope` holds the bound variables and whether a prefix guards them.
    fn term(&mut self, depth: u32, scope: &mut Vec<(String, bool)>) -> Term {
        if depth == 0 {
            return self.leaf(scope);
        }
        let r: f64 = self.rng.random();
        let rec_p = self.cfg.rec_probability;
        let choice_p = self.cfg.choice_probability;
        if r < rec_p {
            // A rec body needs a prefix and a variable below it.
            if depth >= 2 {
                return self.rec(depth, scope);
            }
            return self.prefix(depth, scope);
        }
        if r < rec_p + choice_p {
            let left = self.term(depth - 1, scope);
            let right = self.term(depth - 1, scope);
            return Term::choice(left, right);
        }
        let rest = (r - rec_p - choice_p) / (1.0 - rec_p - choice_p).max(f64::MIN_POSITIVE);
        if rest < PREFIX_SHARE {
            self.prefix(depth, scope)
        } else {
            self.leaf(scope)
        }
    }

    fn leaf(&mut self, scope: &[(String, bool)]) -> Term {
        let guarded: Vec<&String> = scope.iter().filter(|(_, g)| *g).map(|(v, _)| v).collect();
        if !guarded.is_empty() && self.rng.random_bool(0.5) {
            let v = guarded[self.rng.random_range(0..guarded.len())];
            return Term::var(v.clone());
        }
        Term::Nil
    }

    fn prefix(&mut self, depth: u32, scope: &[(String, bool)]) -> Term {
        let label = match self.rng.random_range(0..3) {
            0 => Label::tau(),
            kind => {
                let a = &self.cfg.alphabet[self.rng.random_range(0..self.cfg.alphabet.len())];
                if kind == 1 {
                    Label::input(a.clone())
                } else {
                    Label::output(a.clone())
                }
            }
        };
        let mut guarded: Vec<(String, bool)> = scope.iter().map(|(v, _)| (v.clone(), true)).collect();
        Term::prefix(label, self.term(depth - 1, &mut guarded))
    }

    fn rec(&mut self, depth: u32, scope: &mut Vec<(String, bool)>) -> Term {
        let var = format!("X{}", self.next_var);
        self.next_var += 1;
        scope.push((var.clone(), false));
        let mut body = Term::Nil;
        for _ in 0..REC_RETRIES {
            body = self.term(depth - 1, scope);
            if mentions(&body, &var) {
                scope.pop();
                return Term::rec(var, body);
            }
        }
        scope.pop();
        body
    }
}

fn mentions(t: &Term, var: &str) -> bool {
    match t {
        Term::Nil => false,
        Term::Var(x) => x == var,
        Term::Prefix(_, c) => mentions(c, var),
        Term::Choice(a, b) => mentions(a, var) || mentions(b, var),
        Term::Rec(x, body) => x != var && mentions(body, var),
    }
}

fn generate(cfg: &GenConfig, stream: u64) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let mut g = Gen {
        cfg,
        rng,
        next_var: 0,
    };
    g.term(cfg.max_depth, &mut Vec::new())
}

/// A closed, guarded term determined by `cfg`.
pub fn random_contract(cfg: &GenConfig) -> Result<Term> {
    cfg.validate()?;
    Ok(generate(cfg, 0))
}

/// The `index`-th (client, server) pair for `cfg`.
pub fn random_pair(cfg: &GenConfig, index: u64) -> Result<(Term, Term)> {
    cfg.validate()?;
    Ok((generate(cfg, 2 * index + 1), generate(cfg, 2 * index + 2)))
}
