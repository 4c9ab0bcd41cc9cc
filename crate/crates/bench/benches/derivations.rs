use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use multider::derivations::{graded_piece_with, modular_dimension, saito_check, Solver};
use multider::{builtin_group, free_basis_search, SearchOptions};

fn g25(c: &mut Criterion) {
    let arr = builtin_group("G25", None).unwrap().reflection_arrangement().unwrap();
    let mut g = c.benchmark_group("G25");
    g.sample_size(10);
    g.bench_function("modular dimension p=8", |b| b.iter(|| modular_dimension(black_box(&arr), 8).unwrap()));
    g.bench_function("graded piece p=8 modular", |b| {
        b.iter(|| graded_piece_with(black_box(&arr), 8, Solver::Modular).unwrap())
    });
    let basis = free_basis_search(&arr, &SearchOptions::default()).unwrap().certificate().unwrap().basis.clone();
    g.bench_function("saito check", |b| b.iter(|| saito_check(black_box(&basis), &arr).unwrap()));
    g.bench_function("free basis search", |b| {
        b.iter(|| free_basis_search(black_box(&arr), &SearchOptions::default()).unwrap())
    });
    g.finish();
}

fn g26(c: &mut Criterion) {
    let arr = builtin_group("G26", None).unwrap().reflection_arrangement().unwrap();
    let mut g = c.benchmark_group("G26");
    g.sample_size(10);
    g.bench_function("free basis search", |b| {
        b.iter(|| free_basis_search(black_box(&arr), &SearchOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, g25, g26);
criterion_main!(benches);
