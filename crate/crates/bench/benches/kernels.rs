use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spinor_grass::exterior::beta_form;
use spinor_grass::grassmann::{big_cell_frame, cartan_image, plucker_coordinates};
use spinor_grass::identities::CauchyBinetPfaffian;
use spinor_grass::linalg::{random_skew, seeded_rng};
use spinor_grass::suite::{random_frame, random_isotropic_frame};
use spinor_grass::{det_exact, pfaffian, IndexSet};

fn pfaffian_and_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian");
    for n in [4, 8, 12] {
        let a = random_skew(n, 1, 9);
        group.bench_with_input(BenchmarkId::new("pf", n), &a, |b, a| b.iter(|| pfaffian(black_box(a))));
        group.bench_with_input(BenchmarkId::new("det", n), &a, |b, a| b.iter(|| det_exact(black_box(a.matrix()))));
    }
    group.finish();
}

fn cartan_and_plucker(c: &mut Criterion) {
    let mut group = c.benchmark_group("grassmann");
    for n in [3, 5, 7] {
        let frame = random_isotropic_frame(n, &mut seeded_rng(n as u64), 9);
        group.bench_with_input(BenchmarkId::new("cartan_image", n), &frame, |b, f| b.iter(|| cartan_image(black_box(f))));
        let generic = random_frame(n, &mut seeded_rng(n as u64), 9);
        group.bench_with_input(BenchmarkId::new("plucker", n), &generic, |b, f| b.iter(|| plucker_coordinates(black_box(f))));
    }
    group.finish();
}

fn beta(c: &mut Criterion) {
    let mut group = c.benchmark_group("beta_form");
    group.sample_size(10);
    for n in [3, 4, 5] {
        let spinor = cartan_image(&big_cell_frame(&random_skew(n, 2, 9))).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &spinor, |b, s| b.iter(|| beta_form(black_box(s), s, n)));
    }
    group.finish();
}

fn cauchy_binet_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("cauchy_binet_sweep");
    group.sample_size(10);
    for n in [4, 6] {
        let a = random_skew(n, 3, 9);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| {
                let cb = CauchyBinetPfaffian::new(a);
                let all = IndexSet::all_subsets(n);
                let mut passed = 0usize;
                for i in &all {
                    for j in all.iter().filter(|j| j.len() == i.len()) {
                        passed += usize::from(cb.check(i, j).unwrap().passed);
                    }
                }
                passed
            })
        });
    }
    group.finish();
}

criterion_group!(benches, pfaffian_and_det, cartan_and_plucker, beta, cauchy_binet_sweep);
criterion_main!(benches);
