use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kotoric::exact_linalg::{hermite_normal_form, IntMatrix};
use kotoric::ko_symbolic::{complexify, normalize_symbol};
use kotoric::toric::{fixtures, manifold_ko_rank, manifold_ku, mod2_cohomology};
use kotoric::{Exponents, KuElement, Truncation};

fn ku_product(c: &mut Criterion) {
    let t = Truncation::uniform(3, 6).unwrap();
    let a = KuElement::from_terms(&t, 1, (0..=3).map(|k| (vec![k, 1, 0], 1 + k as i128))).unwrap();
    let b = a.conjugate().add(&KuElement::variable(&t, 1, 2)).unwrap();
    c.bench_function("ku_mul_3vars_d6", |bch| bch.iter(|| black_box(&a).mul(black_box(&b)).unwrap()));
}

fn ko_kernels(c: &mut Criterion) {
    let (i, j) = (Exponents::from_slice(&[3, 2, 3, 1]), Exponents::from_slice(&[2, 3, 1, 3]));
    c.bench_function("normalize_4vars_entries3", |bch| bch.iter(|| normalize_symbol(black_box(i), black_box(j), 0)));
    let a = normalize_symbol(Exponents::from_slice(&[2, 2, 1]), Exponents::from_slice(&[1, 2, 2]), 1);
    c.bench_function("ko_mul_normal_forms", |bch| bch.iter(|| black_box(&a).mul(black_box(&a)).unwrap()));
    let t = Truncation::uniform(3, 6).unwrap();
    c.bench_function("complexify_3vars_d6", |bch| bch.iter(|| complexify(black_box(&a), &t).unwrap()));
}

fn linalg(c: &mut Criterion) {
    // A deterministic dense 24x24 integer matrix.
    let rows: Vec<Vec<i64>> = (0..24)
        .map(|r| (0..24).map(|c| ((r * 31 + c * 17 + r * c) % 23) as i64 - 11).collect())
        .collect();
    let m = IntMatrix::from_rows(&rows).unwrap();
    c.bench_function("hnf_24x24", |bch| bch.iter(|| hermite_normal_form(black_box(&m))));
}

fn toric(c: &mut Criterion) {
    let cp5 = fixtures::cp(5);
    c.bench_function("mod2_cohomology_cp5", |bch| bch.iter(|| mod2_cohomology(black_box(&cp5)).bb_numbers()));
    let cp4 = fixtures::cp(4);
    c.bench_function("manifold_ku_cp4", |bch| bch.iter(|| manifold_ku(black_box(&cp4), 5).unwrap()));
    let model = manifold_ku(&cp4, 5).unwrap();
    c.bench_function("ko_rank_cp4", |bch| bch.iter(|| manifold_ko_rank(black_box(&model), -2).unwrap()));
}

criterion_group!(benches, ku_product, ko_kernels, linalg, toric);
criterion_main!(benches);
