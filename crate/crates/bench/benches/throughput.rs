//! Generation and verification throughput at desk scale. Element counts
//! are symbols (generation, verification) or edges (circuits).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use onion_debruijn::{
    build_layer_graph, hierholzer_circuit, infinite_onion_stream, is_de_bruijn,
    layered_onion_stream, prefer_max_string, EdgePolicy,
};

fn bench_prefer_max(c: &mut Criterion) {
    let mut group = c.benchmark_group("prefer_max_string");
    for (k, n) in [(2u64, 16usize), (10, 5), (32, 4), (1000, 2)] {
        group.throughput(Throughput::Elements(k.pow(n as u32)));
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("k{k}_n{n}")),
            &(k, n),
            |b, &(k, n)| b.iter(|| prefer_max_string(k, n).unwrap()),
        );
    }
    group.finish();
}

fn bench_stream_prefix(c: &mut Criterion) {
    let mut group = c.benchmark_group("stream_prefix_n4");
    for count in [100_000usize, 1_000_000] {
        group.throughput(Throughput::Elements(count as u64));
        group.bench_with_input(
            BenchmarkId::new("prefer_max", count),
            &count,
            |b, &count| {
                b.iter(|| {
                    let mut stream = infinite_onion_stream(4).unwrap();
                    stream.prefix(count).unwrap().last().copied()
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("layered_max", count),
            &count,
            |b, &count| {
                b.iter(|| {
                    let mut stream = layered_onion_stream(4, EdgePolicy::MaxSymbolFirst).unwrap();
                    stream.prefix(count).unwrap().last().copied()
                })
            },
        );
    }
    group.finish();
}

fn bench_circuits(c: &mut Criterion) {
    let mut group = c.benchmark_group("hierholzer_circuit");
    for (k, n) in [(6u64, 4usize), (16, 3), (100, 2)] {
        let graph = build_layer_graph(k, n).unwrap();
        let start = vec![0; n - 1];
        group.throughput(Throughput::Elements(graph.edge_count() as u64));
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("k{k}_n{n}")),
            &graph,
            |b, graph| {
                b.iter(|| hierholzer_circuit(graph, &start, EdgePolicy::MaxSymbolFirst).unwrap())
            },
        );
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_de_bruijn");
    for (k, n) in [(2u64, 16usize), (32, 4), (1000, 2)] {
        let s = prefer_max_string(k, n).unwrap();
        group.throughput(Throughput::Elements(s.len() as u64));
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("k{k}_n{n}")),
            &s,
            |b, s| b.iter(|| is_de_bruijn(s.symbols(), k, n).passed),
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_prefer_max,
    bench_stream_prefix,
    bench_circuits,
    bench_verify
);
criterion_main!(benches);
