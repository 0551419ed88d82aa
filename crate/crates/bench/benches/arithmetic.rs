use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use selmer_core::{scan_m, selmer_dimension, CurveQ};

fn e17a1() -> CurveQ {
    CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap()
}

fn frobenius(c: &mut Criterion) {
    let e = e17a1();
    let mut group = c.benchmark_group("trace_of_frobenius");
    for ell in [101u64, 1009, 10007, 100_003] {
        group.bench_with_input(BenchmarkId::from_parameter(ell), &ell, |b, &ell| {
            b.iter(|| e.trace_of_frobenius(black_box(ell)).unwrap())
        });
    }
    group.finish();
}

fn torsion(c: &mut Criterion) {
    let e = e17a1();
    let mut group = c.benchmark_group("torsion_dimension");
    for (ell, f) in [(11u64, 2u32), (19, 1), (1009, 2), (9973, 1)] {
        group.bench_with_input(BenchmarkId::new(ell.to_string(), f), &(ell, f), |b, &(ell, f)| {
            b.iter(|| e.torsion_dimension(black_box(ell), f, 3).unwrap())
        });
    }
    group.finish();
}

fn selmer(c: &mut Criterion) {
    let e = e17a1();
    c.bench_function("selmer_dimension/m=34", |b| b.iter(|| selmer_dimension(&e, 3, black_box(34), true).unwrap()));
    c.bench_function("selmer_dimension/m=2*17*101*1009", |b| {
        b.iter(|| selmer_dimension(&e, 3, black_box(2 * 17 * 101 * 1009), true).unwrap())
    });
    let mut group = c.benchmark_group("scan_m");
    group.sample_size(10);
    group.bench_function("2..=500", |b| b.iter(|| scan_m(&e, 3, 2, black_box(500), true, |_| true).unwrap()));
    group.finish();
}

criterion_group!(benches, frobenius, torsion, selmer);
criterion_main!(benches);
