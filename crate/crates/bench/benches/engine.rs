use std::hint::black_box;

use cohom_core::abelian::smith_normal_form;
use cohom_core::catalog::{self, compute_space, SpaceId, Variant};
use cohom_core::distinguish::isomorphism_search;
use cohom_core::gysin::run_catalog;
use cohom_core::{GradedRing, IntMatrix};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn snf(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rows: Vec<Vec<i64>> = (0..8).map(|_| (0..8).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let m = IntMatrix::from_i64_rows(&refs);
    c.bench_function("snf 8x8", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn rings(c: &mut Criterion) {
    let p = catalog::presentation_of(SpaceId::GrassEven(6), Variant::Corrected).unwrap();
    c.bench_function("compute g2+:12", |b| b.iter(|| GradedRing::compute(black_box(&p)).unwrap()));
}

fn gysin(c: &mut Criterion) {
    c.bench_function("gysin v2:17 over g2+:17", |b| {
        b.iter(|| run_catalog(SpaceId::GrassOdd(8), Variant::Corrected, SpaceId::StiefelOdd(8)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let a = compute_space(SpaceId::GrassEven(2), Variant::Corrected).unwrap();
    let b = compute_space(SpaceId::S2xS2, Variant::Corrected).unwrap();
    c.bench_function("iso search g2+:4 vs s2xs2, bound 2", |bench| {
        bench.iter(|| isomorphism_search(black_box(&a), black_box(&b), 2).unwrap())
    });
}

criterion_group!(benches, snf, rings, gysin, search);
criterion_main!(benches);
