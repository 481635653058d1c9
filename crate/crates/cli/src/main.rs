mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bcc_core::verify::{verify, VerifyOptions, VerifyReport};
use bcc_core::{
    check_all, classify, compile, parse, restrict, Classification, Composition, ContractGraph, Corpus, GenConfig,
    PairUniverse, RelationKind, DEFAULT_MAX_PAIRS, DEFAULT_MAX_STATES,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use report::{PairReport, Report, TOOL};

/// Decide compliance relations between behavioural contracts.
#[derive(Debug, Parser)]
#[command(name = "bcc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one client against one server.
    Check {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        relations: RelationArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verdict table for every pN/qN pair of a corpus directory.
    Matrix {
        corpus_dir: PathBuf,
        #[command(flatten)]
        relations: RelationArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the fixed-point propositions over a corpus plus random pairs.
    Verify {
        /// Defaults to the bundled example corpus.
        corpus_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Export the pair universe of a composition as Graphviz DOT.
    Dot {
        #[command(flatten)]
        pair: PairArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    client_file: PathBuf,
    client_name: String,
    server_file: PathBuf,
    server_name: String,
}

#[derive(Debug, Args)]
struct RelationArgs {
    /// Relation to check (pg, mst, shd, beh, io, may); repeatable.
    #[arg(long = "relation", value_name = "REL", conflicts_with = "all")]
    relations: Vec<RelationKind>,
    /// Check all six relations (the default).
    #[arg(long)]
    all: bool,
}

impl RelationArgs {
    fn kinds(&self) -> Vec<RelationKind> {
        if self.all || self.relations.is_empty() {
            return RelationKind::ALL.to_vec();
        }
        RelationKind::ALL.into_iter().filter(|k| self.relations.contains(k)).collect()
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    #[arg(long, env = "BCC_MAX_PAIRS", default_value_t = DEFAULT_MAX_PAIRS)]
    max_pairs: usize,
    /// Print a JSON report instead of a table.
    #[arg(long)]
    json: bool,
}

type Outcome = Result<bool, String>;

fn load_contract(file: &Path, name: &str, max_states: usize) -> Result<Arc<ContractGraph>, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let defs = parse(&text).map_err(|e| format!("{}:{e}", file.display()))?;
    let def = defs
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| format!("{}: no contract named `{name}`", file.display()))?;
    let graph = compile(&def.term, max_states).map_err(|e| format!("{}: `{name}`: {e}", file.display()))?;
    Ok(Arc::new(graph))
}

fn load_pair(pair: &PairArgs, common: &CommonArgs) -> Result<Composition, String> {
    Ok(Composition::new(
        load_contract(&pair.client_file, &pair.client_name, common.max_states)?,
        load_contract(&pair.server_file, &pair.server_name, common.max_states)?,
    ))
}

fn classify_all(u: &PairUniverse, kinds: &[RelationKind]) -> BTreeMap<RelationKind, Classification> {
    kinds
        .iter()
        .map(|&k| (k, classify(u, &restrict(u, k)).expect("same universe")))
        .collect()
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serialises"));
}

fn print_report(pairs: Vec<PairReport>, classes: &BTreeMap<RelationKind, Classification>, kinds: &[RelationKind], json: bool) {
    if json {
        print_json(&Report::new(pairs, classes));
        return;
    }
    print!("{}", report::table(&pairs, kinds));
    for p in &pairs {
        print!("{}", report::witnesses(p));
    }
    if !pairs.is_empty() {
        println!();
        print!("{}", report::classification(classes));
    }
}

fn cmd_check(pair: &PairArgs, relations: &RelationArgs, common: &CommonArgs) -> Outcome {
    let comp = load_pair(pair, common)?;
    let kinds = relations.kinds();
    let root = comp.initial();
    let verdicts = check_all(&comp, root, &kinds, common.max_pairs).map_err(|e| e.to_string())?;
    let u = comp.build_universe(&[root], common.max_pairs).map_err(|e| e.to_string())?;
    let p = PairReport::new(pair.client_name.clone(), pair.server_name.clone(), verdicts);
    let ok = p.all_hold();
    print_report(vec![p], &classify_all(&u, &kinds), &kinds, common.json);
    Ok(ok)
}

fn cmd_matrix(dir: &Path, relations: &RelationArgs, common: &CommonArgs) -> Outcome {
    let corpus = Corpus::load_dir(dir).map_err(|e| e.to_string())?;
    let compiled = corpus.compile(common.max_states).map_err(|e| e.to_string())?;
    let kinds = relations.kinds();
    let mut pairs = Vec::new();
    for (names, &root) in compiled.pairs.iter().zip(&compiled.roots) {
        let verdicts = check_all(&compiled.composition, root, &kinds, common.max_pairs)
            .map_err(|e| format!("{}/{}: {e}", names.client, names.server))?;
        pairs.push(PairReport::new(names.client.clone(), names.server.clone(), verdicts));
    }
    let bound = common.max_pairs.saturating_mul(compiled.roots.len().max(1));
    let u = compiled
        .composition
        .build_universe(&compiled.roots, bound)
        .map_err(|e| e.to_string())?;
    print_report(pairs, &classify_all(&u, &kinds), &kinds, common.json);
    Ok(true)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    tool: &'static str,
    #[serde(flatten)]
    report: &'a VerifyReport,
}

fn cmd_verify(dir: Option<&Path>, random: usize, seed: u64, common: &CommonArgs) -> Outcome {
    let corpus = match dir {
        Some(d) => Corpus::load_dir(d).map_err(|e| e.to_string())?,
        None => Corpus::bundled(),
    };
    let opts = VerifyOptions {
        random,
        generator: GenConfig::with_seed(seed),
        max_states: common.max_states,
        max_pairs: common.max_pairs,
    };
    let r = verify(&corpus, &opts).map_err(|e| e.to_string())?;
    if common.json {
        print_json(&VerifyJson { tool: TOOL, report: &r });
        return Ok(r.passed());
    }
    println!("{} roots, {} pairs", r.roots.len(), r.universe_size);
    for d in &r.dropped {
        println!("dropped {d}");
    }
    for c in &r.checks {
        print!("{} {}", report::mark(c.passed), c.name);
        if let Some(p) = c.offending.first() {
            print!("  (e.g. {p}, {} offending)", c.offending.len());
        }
        println!();
    }
    println!("shd but not beh: {}", r.should_not_beh.join(", "));
    println!("beh but not shd: {}", r.beh_not_should.join(", "));
    println!();
    print!("{}", report::classification(&r.classification));
    Ok(r.passed())
}

fn cmd_dot(pair: &PairArgs, out: Option<&Path>, common: &CommonArgs) -> Outcome {
    let comp = load_pair(pair, common)?;
    let u = comp.build_universe(&[comp.initial()], common.max_pairs).map_err(|e| e.to_string())?;
    let dot = u.to_dot(&pair.client_name, &pair.server_name);
    match out {
        Some(path) => fs::write(path, dot).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{dot}"),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { pair, relations, common } => cmd_check(pair, relations, common),
        Command::Matrix { corpus_dir, relations, common } => cmd_matrix(corpus_dir, relations, common),
        Command::Verify { corpus_dir, random, seed, common } => cmd_verify(corpus_dir.as_deref(), *random, *seed, common),
        Command::Dot { pair, out, common } => cmd_dot(pair, out.as_deref(), common),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
