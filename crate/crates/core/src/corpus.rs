//! Collections of `.bc` files whose contracts pair up by name: `p<N>` is a
//! client and `q<N>` its server.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::composition::{Composition, PairState};
use crate::error::{Error, Result};
use crate::lang::{parse, Compiler, ContractDef, Term};
use crate::lts::ContractGraph;

/// The bundled four-pair example corpus.
pub const PAIRS: &str = include_str!("../corpus/pairs.bc");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedContract {
    pub name: String,
    pub file: String,
    pub term: Term,
}

/// A client/server pair named by the corpus convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPair {
    pub client: String,
    pub server: String,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub contracts: Vec<NamedContract>,
    pub pairs: Vec<CorpusPair>,
}

/// Orders pair suffixes numerically when both are numbers.
fn suffix_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

impl Corpus {
    /// Builds a corpus from `(file name, source)` pairs.
    pub fn from_sources<S: AsRef<str>>(sources: &[(S, S)]) -> Result<Self> {
        let mut contracts = Vec::new();
        let mut owner: BTreeMap<String, String> = BTreeMap::new();
        let mut problems = Vec::new();
        for (file, text) in sources {
            let file = file.as_ref();
            let defs: Vec<ContractDef> =
                parse(text.as_ref()).map_err(|e| Error::Corpus(format!("{file}: {e}")))?;
            for d in defs {
                if let Some(prev) = owner.get(&d.name) {
                    problems.push(format!(
                        "{file}:{}: `{}` already defined in {prev}",
                        d.span.line, d.name
                    ));
                    continue;
                }
                owner.insert(d.name.clone(), file.to_string());
                contracts.push(NamedContract {
                    name: d.name,
                    file: file.to_string(),
                    term: d.term,
                });
            }
        }

        let mut suffixes: Vec<&str> = Vec::new();
        for c in &contracts {
            let (role, suffix) = c.name.split_at(1);
            let partner = match role {
                "p" => format!("q{suffix}"),
                "q" => format!("p{suffix}"),
                _ => {
                    problems.push(format!(
                        "{}: `{}` does not follow the p<N>/q<N> naming convention",
                        c.file, c.name
                    ));
                    continue;
                }
            };
            if suffix.is_empty() {
                problems.push(format!("{}: `{}` has no pair suffix", c.file, c.name));
            } else if !owner.contains_key(&partner) {
                problems.push(format!("{}: `{}` has no partner `{partner}`", c.file, c.name));
            } else if role == "p" {
                suffixes.push(suffix);
            }
        }
        if !problems.is_empty() {
            return Err(Error::Corpus(problems.join("\n")));
        }
        suffixes.sort_by(|a, b| suffix_order(a, b));
        let pairs = suffixes
            .into_iter()
            .map(|s| CorpusPair {
                client: format!("p{s}"),
                server: format!("q{s}"),
            })
            .collect();
        Ok(Corpus { contracts, pairs })
    }

    /// The bundled example corpus.
    pub fn bundled() -> Self {
        Self::from_sources(&[("pairs.bc", PAIRS)]).expect("bundled corpus is valid")
    }

    /// Loads every `*.bc` file of `dir`, in file name order.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::Corpus(format!("{}: {e}", dir.display()));
        let mut paths: Vec<_> = fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "bc"))
            .collect();
        paths.sort();
        let mut sources = Vec::new();
        for p in paths {
            let text = fs::read_to_string(&p)
                .map_err(|e| Error::Corpus(format!("{}: {e}", p.display())))?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            sources.push((name, text));
        }
        Self::from_sources(&sources)
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.contracts.iter().find(|c| c.name == name).map(|c| &c.term)
    }

    /// Compiles all paired contracts into one shared graph.
    pub fn compile(&self, max_states: usize) -> Result<CompiledCorpus> {
        let mut compiler = Compiler::new(max_states);
        let mut roots = Vec::new();
        for pair in &self.pairs {
            let state = |name: &str, compiler: &mut Compiler| {
                let term = self.term(name).expect("paired names are defined");
                compiler
                    .add(term)
                    .map_err(|e| Error::Corpus(format!("`{name}`: {e}")))
            };
            let client = state(&pair.client, &mut compiler)?;
            let server = state(&pair.server, &mut compiler)?;
            roots.push(PairState::new(client, server));
        }
        let initial = roots.first().map_or(crate::lts::StateId::ZERO, |r| r.client);
        let graph = Arc::new(compiler.finish(initial)?);
        Ok(CompiledCorpus {
            composition: Composition::new(graph.clone(), graph),
            pairs: self.pairs.clone(),
            roots,
        })
    }
}

/// A corpus compiled into a single graph used for both sides.
#[derive(Debug, Clone)]
pub struct CompiledCorpus {
    pub composition: Composition,
    pub pairs: Vec<CorpusPair>,
    /// Root pair of each entry of `pairs`.
    pub roots: Vec<PairState>,
}

impl CompiledCorpus {
    pub fn graph(&self) -> &ContractGraph {
        self.composition.client()
    }

    pub fn root_of(&self, client: &str) -> Option<PairState> {
        self.pairs.iter().position(|p| p.client == client).map(|i| self.roots[i])
    }
}
