use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qqm_bench::{evolution_inputs, hermitian, rng};
use qqm_core::dynamics::Propagator;
use qqm_core::hspace::{eig_hermitian, expm_antihermitian};
use qqm_core::measurement::{mul_symbols, BasisLabel, MeasurementSymbol, TransformationTable};
use qqm_core::quat::random_quaternion;

fn quaternion_mul(c: &mut Criterion) {
    let mut r = rng(1);
    let (a, b) = (random_quaternion(&mut r, false), random_quaternion(&mut r, false));
    c.bench_function("quaternion_mul", |bench| bench.iter(|| black_box(a) * black_box(b)));
}

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    for n in [4, 16, 64] {
        let h = hermitian(n, n as u64);
        group.bench_with_input(BenchmarkId::new("eig_hermitian", n), &h, |b, h| b.iter(|| eig_hermitian(h).unwrap()));
        let a = h.scale_left(qqm_core::Quaternion::E1);
        let a = (&a - &a.adjoint()).scale(0.5);
        group.bench_with_input(BenchmarkId::new("expm_antihermitian", n), &a, |b, a| {
            b.iter(|| expm_antihermitian(a).unwrap())
        });
    }
    group.finish();
}

fn evolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolution");
    for n in [4, 32] {
        let (h, psi, iota) = evolution_inputs(n, 3);
        let prop = Propagator::new(&h, iota).unwrap();
        group.bench_with_input(BenchmarkId::new("propagator_apply", n), &psi, |b, psi| {
            b.iter(|| prop.apply(black_box(1.3), psi).unwrap())
        });
    }
    group.finish();
}

fn symbols(c: &mut Criterion) {
    let a = BasisLabel::new("A", 4).unwrap();
    let b = BasisLabel::new("B", 4).unwrap();
    let mut r = rng(4);
    let t = TransformationTable::random_unitary(&mut r, a.clone(), b.clone()).unwrap();
    let x = MeasurementSymbol::new(a.clone(), 1, a.clone(), 2, random_quaternion(&mut r, false)).unwrap();
    let y = MeasurementSymbol::new(b.clone(), 3, b.clone(), 0, random_quaternion(&mut r, false)).unwrap();
    c.bench_function("mul_symbols", |bench| bench.iter(|| mul_symbols(black_box(&x), black_box(&y), &t).unwrap()));
}

criterion_group!(benches, quaternion_mul, spectral, evolution, symbols);
criterion_main!(benches);
