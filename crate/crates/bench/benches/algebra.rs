use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use multider::algebra::{parse_poly, poly_matrix_det};
use multider::derivations::parse_der;
use multider::CycloField;

fn poly_mul(c: &mut Criterion) {
    let f = CycloField::get(3).unwrap();
    let a = parse_poly(f, 3, "(1+z)*x^4 + 3*x*y^3 - (z)*y*z^3 + x^2*y*z - 1/2*z^4").unwrap();
    let b = parse_poly(f, 3, "x^3 + (z)*y^3 + (-1-z)*z^3").unwrap();
    c.bench_function("poly mul deg4 x deg3", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    let p = &a * &b;
    let alpha = parse_poly(f, 3, "x + (z)*y + z").unwrap();
    let q = &p * &alpha;
    c.bench_function("divide by linear form", |bch| bch.iter(|| black_box(&q).divrem_linear(&alpha).unwrap()));
}

fn det3(c: &mut Criterion) {
    let text = include_str!("../../../fixtures/g25.der");
    let (_, _, basis) = parse_der(text).unwrap();
    let m: Vec<_> = basis.iter().map(|t| t.coeffs().to_vec()).collect();
    c.bench_function("3x3 degree-8 polynomial det", |bch| bch.iter(|| poly_matrix_det(black_box(&m)).unwrap()));
}

criterion_group!(benches, poly_mul, det3);
criterion_main!(benches);
