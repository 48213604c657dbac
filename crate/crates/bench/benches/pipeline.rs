use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kacmod::codes::enumerate_codes;
use kacmod::factors::{composition_factors, primitive_set_oracle};
use kacmod::theta::{count_theta, enumerate_direct, enumerate_recursive};
use kacmod::NqcTable;
use kacmod_bench::{named, random_batch};

fn factors(c: &mut Criterion) {
    let mut g = c.benchmark_group("composition_factors");
    for (name, w) in named() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &w, |b, w| {
            b.iter(|| composition_factors(black_box(w)).unwrap())
        });
    }
    let batch = random_batch(100, 11);
    g.bench_function("random-100", |b| {
        b.iter(|| batch.iter().map(|w| composition_factors(w).unwrap().len()).sum::<usize>())
    });
    g.finish();
}

fn enumerators(c: &mut Criterion) {
    let mut g = c.benchmark_group("theta");
    for (name, w) in named() {
        let t = NqcTable::new(&w).unwrap();
        g.bench_with_input(BenchmarkId::new("direct", &name), &t, |b, t| b.iter(|| enumerate_direct(black_box(t))));
        g.bench_with_input(BenchmarkId::new("recursive", &name), &t, |b, t| {
            b.iter(|| enumerate_recursive(black_box(t)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("count", &name), &t, |b, t| b.iter(|| count_theta(black_box(t))));
    }
    g.finish();
}

fn codes(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_codes");
    for (name, w) in named() {
        let t = NqcTable::new(&w).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &t, |b, t| b.iter(|| enumerate_codes(black_box(t))));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let w = "3,1|1,3".parse().unwrap();
    c.bench_function("oracle/3,1|1,3", |b| b.iter(|| primitive_set_oracle(black_box(&w), 8).unwrap()));
}

criterion_group!(benches, factors, enumerators, codes, oracle);
criterion_main!(benches);
