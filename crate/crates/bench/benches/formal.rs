use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use selmer_core::formal::{norm_cokernel_dimension, FgSeries, Tower};
use selmer_core::CurveQ;

fn e17a1() -> CurveQ {
    CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap()
}

fn group_law(c: &mut Criterion) {
    let e = e17a1();
    let mut group = c.benchmark_group("formal_group");
    group.sample_size(10);
    for prec in [10usize, 24] {
        group.bench_function(format!("of_curve/prec={prec}"), |b| {
            b.iter(|| FgSeries::of_curve(&e, 3, 12, black_box(prec)).unwrap())
        });
    }
    group.finish();
}

fn tower(c: &mut Criterion) {
    c.bench_function("tower/build p=3 m=3", |b| b.iter(|| Tower::build(3, black_box(3), 12).unwrap()));
}

fn cokernel(c: &mut Criterion) {
    let f = FgSeries::of_curve(&e17a1(), 3, 12, 24).unwrap();
    let mut group = c.benchmark_group("norm_cokernel");
    group.sample_size(10);
    for m in [2u64, 3] {
        let t = Tower::build(3, m, 12).unwrap();
        let truncation = t.ramification().unwrap().t + 5;
        group.bench_function(format!("m={m}"), |b| {
            b.iter(|| norm_cokernel_dimension(&f, &t, black_box(truncation)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, group_law, tower, cokernel);
criterion_main!(benches);
