use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use eigencoin::invariants::{char_poly, coincidence_count, partial_kw, pfaffian};
use eigencoin::korbits::enumerate_orbits;
use eigencoin::regularity::{is_nsreg, kostant_jacobian_rank};
use eigencoin::{AlgebraContext, Kind};
use eigencoin_bench::fixture;

fn invariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("invariants");
    for n in [6, 8, 10] {
        let f = fixture(Kind::SO, n, 1);
        g.bench_with_input(BenchmarkId::new("char_poly", n), &f, |b, f| {
            b.iter(|| char_poly(black_box(&f.x)))
        });
        g.bench_with_input(BenchmarkId::new("pfaffian", n), &f, |b, f| {
            b.iter(|| pfaffian(&f.ctx, black_box(&f.x)))
        });
        g.bench_with_input(BenchmarkId::new("partial_kw", n), &f, |b, f| {
            b.iter(|| partial_kw(&f.ctx, black_box(&f.x)))
        });
        g.bench_with_input(BenchmarkId::new("coincidence_count", n), &f, |b, f| {
            b.iter(|| coincidence_count(&f.ctx, black_box(&f.x)))
        });
    }
    g.finish();
}

fn regularity(c: &mut Criterion) {
    let mut g = c.benchmark_group("regularity");
    g.sample_size(10);
    for (kind, n) in [(Kind::GL, 4), (Kind::SO, 5), (Kind::SO, 6)] {
        let f = fixture(kind, n, 2);
        let label = f.ctx.label();
        g.bench_with_input(BenchmarkId::new("is_nsreg", &label), &f, |b, f| {
            b.iter(|| is_nsreg(&f.ctx, black_box(&f.x)))
        });
        g.bench_with_input(BenchmarkId::new("jacobian_rank", &label), &f, |b, f| {
            b.iter(|| kostant_jacobian_rank(&f.ctx, black_box(&f.x)))
        });
    }
    g.finish();
}

fn orbits(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbits");
    g.sample_size(10);
    for n in [7, 8, 10] {
        let ctx = AlgebraContext::new(Kind::SO, n).expect("supported size");
        g.bench_with_input(BenchmarkId::new("enumerate", n), &ctx, |b, ctx| {
            b.iter(|| enumerate_orbits(ctx))
        });
    }
    g.finish();
}

criterion_group!(benches, invariants, regularity, orbits);
criterion_main!(benches);
