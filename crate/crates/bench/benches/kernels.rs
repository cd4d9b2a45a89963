use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use e10_core::borcherds::{denominator_check, product_side, PetersonSolver};
use e10_core::lattice::{delta, enumerate_positive_roots};
use e10_core::qseries::{f_e10, gamma05_form};
use e10_core::{rank2, rank3};

fn series(c: &mut Criterion) {
    c.bench_function("f_e10 prec 200", |b| b.iter(|| f_e10(black_box(200))));
    c.bench_function("gamma05 form prec 60", |b| b.iter(|| gamma05_form(black_box(60)).unwrap()));
    c.bench_function("phi01 prec 12", |b| b.iter(|| rank3::phi01(black_box(12)).unwrap()));
}

fn e10(c: &mut Criterion) {
    c.bench_function("positive roots H=10", |b| b.iter(|| enumerate_positive_roots(black_box(10))));
    c.bench_function("product side H=10", |b| b.iter(|| product_side(black_box(10)).unwrap()));
    c.bench_function("denominator check H=6", |b| b.iter(|| denominator_check(black_box(6)).unwrap()));
    c.bench_function("peterson mult(delta) cold", |b| {
        b.iter(|| PetersonSolver::new(30).multiplicity(black_box(&delta())).unwrap())
    });
}

fn companions(c: &mut Criterion) {
    c.bench_function("delta35 product (5,5)", |b| b.iter(|| rank3::delta35_product(black_box(5), 5).unwrap()));
    c.bench_function("rank-2 product B=16", |b| b.iter(|| rank2::product_side_rank2(black_box(16)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = series, e10, companions
}
criterion_main!(benches);
