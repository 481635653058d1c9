use std::hint::black_box;
use std::sync::Arc;

use bcc_core::verify::{verify, VerifyOptions};
use bcc_core::{
    compile, evaluate, gfp, lfp, random_pair, restrict, Compiler, Composition, Corpus, GenConfig, PairState,
    PairUniverse, RelationKind, Term, DEFAULT_MAX_PAIRS, DEFAULT_MAX_STATES,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const SEED: u64 = 7;

fn random_terms(n: usize) -> Vec<(Term, Term)> {
    let cfg = GenConfig::with_seed(SEED);
    (0..n).map(|i| random_pair(&cfg, i as u64).unwrap()).collect()
}

/// One shared graph holding `n` random pairs, with its multi-root universe.
fn random_universe(n: usize) -> PairUniverse {
    let mut compiler = Compiler::new(DEFAULT_MAX_STATES);
    let roots: Vec<PairState> = random_terms(n)
        .iter()
        .map(|(c, s)| PairState::new(compiler.add(c).unwrap(), compiler.add(s).unwrap()))
        .collect();
    let g = Arc::new(compiler.finish(roots[0].client).unwrap());
    Composition::new(g.clone(), g)
        .build_universe(&roots, DEFAULT_MAX_PAIRS * n)
        .unwrap()
}

fn bench_compile(c: &mut Criterion) {
    let terms = random_terms(100);
    c.bench_function("compile/100 random pairs", |b| {
        b.iter(|| {
            for (client, server) in &terms {
                black_box(compile(client, DEFAULT_MAX_STATES).unwrap());
                black_box(compile(server, DEFAULT_MAX_STATES).unwrap());
            }
        })
    });
}

fn bench_universe(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_universe");
    for n in [10usize, 100, 500] {
        let mut compiler = Compiler::new(DEFAULT_MAX_STATES);
        let roots: Vec<PairState> = random_terms(n)
            .iter()
            .map(|(c, s)| PairState::new(compiler.add(c).unwrap(), compiler.add(s).unwrap()))
            .collect();
        let g = Arc::new(compiler.finish(roots[0].client).unwrap());
        let comp = Composition::new(g.clone(), g);
        group.bench_with_input(BenchmarkId::from_parameter(n), &roots, |b, roots| {
            b.iter(|| black_box(comp.build_universe(roots, DEFAULT_MAX_PAIRS * n).unwrap()))
        });
    }
    group.finish();
}

fn bench_relations(c: &mut Criterion) {
    let u = random_universe(500);
    let mut group = c.benchmark_group("relations/500 pairs");
    for kind in RelationKind::ALL {
        group.bench_function(kind.short_name(), |b| b.iter(|| black_box(evaluate(&u, kind))));
    }
    group.bench_function("restrict all", |b| {
        b.iter(|| {
            for kind in RelationKind::ALL {
                black_box(restrict(&u, kind));
            }
        })
    });
    group.finish();
}

fn bench_fixpoints(c: &mut Criterion) {
    let u = random_universe(500);
    let mut group = c.benchmark_group("fixpoint/500 pairs");
    group.bench_function("lfp", |b| b.iter(|| black_box(lfp(&u))));
    group.bench_function("gfp", |b| b.iter(|| black_box(gfp(&u))));
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let opts = VerifyOptions {
        random: 500,
        generator: GenConfig::with_seed(SEED),
        ..VerifyOptions::default()
    };
    let corpus = Corpus::bundled();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("corpus + 500 random", |b| b.iter(|| black_box(verify(&corpus, &opts).unwrap())));
    group.finish();
}

criterion_group!(benches, bench_compile, bench_universe, bench_relations, bench_fixpoints, bench_verify);
criterion_main!(benches);
