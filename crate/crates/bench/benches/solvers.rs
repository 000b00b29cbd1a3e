use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use efsize::{density, fo_minsize, min_size_table, minsize, FoLimits, GameMode, PropLimits};
use efsize_bench::{orders, parity};
use std::hint::black_box;

fn parity_minsize(c: &mut Criterion) {
    let mut group = c.benchmark_group("parity_minsize");
    for n in 1..=3u8 {
        let (s, r) = parity(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| minsize(black_box(&s), black_box(&r), &PropLimits::default()).unwrap())
        });
    }
    group.finish();
}

fn parity_density(c: &mut Criterion) {
    let (s, r) = parity(8);
    c.bench_function("parity_density_8", |b| b.iter(|| density(black_box(&s), black_box(&r)).unwrap()));
}

fn linorder_minsize(c: &mut Criterion) {
    let mut group = c.benchmark_group("linorder_minsize");
    group.sample_size(10);
    for (n, w) in [(2u8, 3usize), (3, 5)] {
        let (a, b) = orders(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| {
                fo_minsize(black_box(&a), black_box(&b), GameMode::Existential, w, &FoLimits::default()).unwrap()
            })
        });
    }
    group.finish();
}

fn oracle_table(c: &mut Criterion) {
    c.bench_function("oracle_table_3", |b| b.iter(|| min_size_table(black_box(3)).unwrap()));
}

criterion_group!(benches, parity_minsize, parity_density, linorder_minsize, oracle_table);
criterion_main!(benches);
