use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dgcat_bench::{homology_cases, Q};
use dgcat_core::cyclic::{hc_dims, hp_dims};
use dgcat_core::exactfield::{rank, Matrix};
use dgcat_core::hochschild::hh_dims;
use dgcat_core::saturation::smoothness_certify;
use dgcat_core::corpus;

fn hochschild(c: &mut Criterion) {
    let mut group = c.benchmark_group("hh_dims");
    for (name, cat) in homology_cases() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &cat, |b, cat| {
            b.iter(|| hh_dims(black_box(cat), 3).unwrap())
        });
    }
    group.finish();
}

fn cyclic(c: &mut Criterion) {
    let unit = corpus::unit(Q);
    let path = corpus::path_a2(Q);
    c.bench_function("hc_dims/unit/6", |b| b.iter(|| hc_dims(black_box(&unit), 6).unwrap()));
    c.bench_function("hp_dims/path_a2", |b| b.iter(|| hp_dims(black_box(&path), 0..=1, 4).unwrap()));
}

fn smoothness(c: &mut Criterion) {
    let path = corpus::path_a2(Q);
    let square = path.tensor(&path).unwrap();
    c.bench_function("smoothness/path_squared", |b| b.iter(|| smoothness_certify(black_box(&square), 4)));
}

fn elimination(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..40).map(|i| (0..40).map(|j| ((i * 7 + j * 13) % 11) as i64 - 5).collect()).collect();
    let m = Matrix::from_rows_i64(Q, &rows);
    c.bench_function("rank/40x40", |b| b.iter(|| rank(black_box(&m))));
}

criterion_group!(benches, hochschild, cyclic, smoothness, elimination);
criterion_main!(benches);
