use std::hint::black_box;

use chaoskit::{cgr_trajectory, count_kmers, fcgr_count, fcgr_grid, fcgr_kronecker, render_cgr};
use chaoskit_bench::random_sequence;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const LEN: usize = 1_000_000;

fn kmer_counting(c: &mut Criterion) {
    let seq = random_sequence(LEN, 1);
    let mut group = c.benchmark_group("count_kmers");
    group.throughput(Throughput::Elements(LEN as u64));
    for k in [4, 8, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| b.iter(|| count_kmers(black_box(&seq), k)));
    }
    group.finish();
}

fn fcgr(c: &mut Criterion) {
    let seq = random_sequence(LEN, 2);
    let mut group = c.benchmark_group("fcgr");
    group.throughput(Throughput::Elements(LEN as u64));
    for k in [6, 9] {
        group.bench_with_input(BenchmarkId::new("count", k), &k, |b, &k| b.iter(|| fcgr_count(black_box(&seq), k)));
        group.bench_with_input(BenchmarkId::new("grid", k), &k, |b, &k| b.iter(|| fcgr_grid(black_box(&seq), k)));
        group.bench_with_input(BenchmarkId::new("kronecker", k), &k, |b, &k| {
            b.iter(|| fcgr_kronecker(black_box(&seq), k))
        });
    }
    group.finish();
}

fn trajectory_and_image(c: &mut Criterion) {
    let short = random_sequence(64, 3);
    c.bench_function("cgr_trajectory/64", |b| b.iter(|| cgr_trajectory(black_box(&short))));
    let long = random_sequence(LEN, 4);
    c.bench_function("render_cgr/r8", |b| b.iter(|| render_cgr(black_box(&long), 8)));
}

criterion_group!(benches, kmer_counting, fcgr, trajectory_and_image);
criterion_main!(benches);
