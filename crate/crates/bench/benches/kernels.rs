use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use noncomm_bench::{graph, groups};
use noncomm_core::ncgraph::{clique_number, fingerprint, graphs_isomorphic};
use noncomm_core::{build_graph, sl2, CentralizerProfile};

fn graph_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph_build");
    for g in groups() {
        group.bench_with_input(BenchmarkId::from_parameter(g.label()), &g, |b, g| b.iter(|| build_graph(black_box(g)).unwrap()));
    }
    group.finish();
}

fn clique(c: &mut Criterion) {
    let mut group = c.benchmark_group("clique");
    group.sample_size(10);
    for g in groups() {
        let a = graph(&g);
        group.bench_with_input(BenchmarkId::from_parameter(g.label()), &a, |b, a| {
            b.iter(|| clique_number(black_box(a), Duration::from_secs(300)).unwrap().size)
        });
    }
    group.finish();
}

fn profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("profile");
    for g in groups() {
        let a = graph(&g);
        group.bench_with_input(BenchmarkId::new("from_graph", g.label()), &a, |b, a| b.iter(|| CentralizerProfile::from_graph(black_box(a))));
        group.bench_with_input(BenchmarkId::new("fingerprint", g.label()), &a, |b, a| b.iter(|| fingerprint(black_box(a))));
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let a = graph(&sl2(4).unwrap());
    let perm: Vec<usize> = (0..a.vertex_count()).map(|v| (v * 7 + 3) % a.vertex_count()).collect();
    let moved = a.relabel(&perm).unwrap();
    c.bench_function("graph_iso SL(2,4)", |b| b.iter(|| graphs_isomorphic(black_box(&a), black_box(&moved)).unwrap()));
}

criterion_group!(benches, graph_build, clique, profile, isomorphism);
criterion_main!(benches);
