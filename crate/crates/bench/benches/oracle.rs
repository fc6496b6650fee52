//! Supporting-machinery benchmarks: exact-oracle enumeration and LP at
//! validation scale, plus instance generation and matrix construction at
//! experiment scale.

use std::hint::black_box;

use coverlife_bench::{dense_instance, matrix, oracle_instance};
use coverlife_core::{
    enumerate_minimal_covers, exact_optimum, generate, CoverageMatrix, GenConfig,
    DEFAULT_COVER_LIMIT,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// Enumeration cost as the sensor count grows with targets held at 6;
/// the cover set, and with it the search tree, grows combinatorially.
fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle/enumerate");
    for n in [8usize, 10, 12] {
        let inst = oracle_instance(n, 6, 42);
        let m = matrix(&inst);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| enumerate_minimal_covers(black_box(&m), DEFAULT_COVER_LIMIT).unwrap());
        });
    }
    group.finish();
}

/// End-to-end exact solve (enumeration + simplex) at oracle scale.
fn bench_exact(c: &mut Criterion) {
    let inst = oracle_instance(10, 6, 42);
    let m = matrix(&inst);
    c.bench_function("oracle/exact_optimum", |b| {
        b.iter(|| {
            exact_optimum(
                black_box(&m),
                black_box(inst.battery()),
                DEFAULT_COVER_LIMIT,
            )
            .unwrap()
        });
    });
}

/// Deployment generation plus coverage-matrix construction at the
/// largest experiment cell (150 sensors, 90 targets).
fn bench_generation(c: &mut Criterion) {
    c.bench_function("instance/generate_150x90", |b| {
        let mut config = GenConfig::new(150, 90, 42);
        config.target_area = 300.0;
        config.range = 600.0;
        b.iter(|| generate(black_box(&config)).unwrap());
    });
    c.bench_function("instance/matrix_150x90", |b| {
        let inst = dense_instance(150, 90, 42);
        b.iter(|| CoverageMatrix::build(black_box(&inst)).unwrap());
    });
}

criterion_group!(benches, bench_enumeration, bench_exact, bench_generation);
criterion_main!(benches);
