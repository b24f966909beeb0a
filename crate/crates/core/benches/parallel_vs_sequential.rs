use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use dispersion::batch::solve_all;
use dispersion::graph::named;
use dispersion::matching::edmonds_gallai_with;
use dispersion::oracle::{build_conflict_graph, maximum_independent_set, OracleConfig};
use dispersion::{DispOptions, Execution, Graph, Rational};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn conflict_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("conflict_graph");
    let g = named::cube();
    let delta = Rational::frac(3, 4);
    for (name, exec) in MODES {
        let cfg = OracleConfig { build: exec, ..Default::default() };
        group.bench_function(BenchmarkId::new(name, "cube@3/4"), |b| {
            b.iter(|| build_conflict_graph(black_box(&g), delta, &cfg).unwrap())
        });
    }
    group.finish();
}

fn edmonds_gallai(c: &mut Criterion) {
    let mut group = c.benchmark_group("edmonds_gallai");
    let g = named::complete_bipartite(12, 9);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "K12,9"), |b| {
            b.iter(|| edmonds_gallai_with(black_box(&g), exec).unwrap())
        });
    }
    group.finish();
}

fn independent_set(c: &mut Criterion) {
    let mut group = c.benchmark_group("independent_set");
    group.sample_size(10);
    let cg = build_conflict_graph(&named::complete(4), Rational::frac(3, 2), &OracleConfig::default()).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "K4@3/2"), |b| {
            b.iter(|| maximum_independent_set(black_box(&cg.conflicts), None, exec).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_solve");
    let graphs: Vec<Graph> = (3..12)
        .flat_map(|n| [named::cycle(n), named::star(n), named::complete(n.min(7))])
        .collect();
    let jobs: Vec<(Graph, Rational)> = graphs
        .iter()
        .flat_map(|g| [Rational::integer(2), Rational::frac(2, 5), Rational::frac(1, 3)].map(|d| (g.clone(), d)))
        .collect();
    let opts = DispOptions::default();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, jobs.len()), |b| b.iter(|| solve_all(black_box(&jobs), &opts, exec)));
    }
    group.finish();
}

criterion_group!(benches, conflict_graph, edmonds_gallai, independent_set, batch);
criterion_main!(benches);
