use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use skindepth_core::dielectric::{self, kernels};
use skindepth_core::force::{self, ForceOptions};
use skindepth_core::impedance::{self, ImpedanceOptions};
use skindepth_core::quadrature::{integrate_adaptive, DecayHint, IntegralSpec};
use skindepth_core::{preset, DielectricModel, Geometry, ResponsePoint};

fn dielectric_kernels(c: &mut Criterion) {
    let m = preset("gold").unwrap();
    let mut g = c.benchmark_group("kernels");
    for v in [0.05, 0.5, 50.0] {
        g.bench_with_input(BenchmarkId::new("transverse_imag", v), &v, |b, &v| {
            b.iter(|| kernels::transverse_imag(black_box(v)))
        });
    }
    g.bench_function("boltzmann_real", |b| {
        b.iter(|| dielectric::boltzmann_real(black_box(0.1), black_box(5.0), &m))
    });
    g.bench_function("lindhard_real", |b| {
        b.iter(|| dielectric::lindhard_real(black_box(0.1), black_box(5.0), 1e4, &m))
    });
    g.finish();
}

fn impedances(c: &mut Criterion) {
    let m = preset("gold").unwrap();
    let opts = ImpedanceOptions::default();
    let imag = ResponsePoint::imaginary(1e-3, 1e-2).unwrap();
    let real = ResponsePoint::real(0.1, 0.05).unwrap();
    let mut g = c.benchmark_group("impedance");
    g.bench_function("imaginary_axis", |b| {
        b.iter(|| impedance::nonlocal_pair_imag(black_box(&imag), &m, &opts))
    });
    g.bench_function("real_axis", |b| {
        b.iter(|| impedance::impedance(black_box(&real), &m, DielectricModel::Boltzmann, &opts))
    });
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    let spec = IntegralSpec::semi_infinite(0.0, DecayHint::Sech).with_rel_tol(1e-10);
    c.bench_function("quadrature/sech", |b| {
        b.iter(|| integrate_adaptive(|x: f64| 1.0 / (x.cosh() + black_box(3.0)), &spec))
    });
}

fn correction(c: &mut Criterion) {
    let m = preset("gold").unwrap();
    let opts = ForceOptions::default().with_rel_tol(force::DEFAULT_CORRECTION_TOL);
    let mut g = c.benchmark_group("force");
    g.sample_size(10);
    g.bench_function("correction_pp_200nm", |b| {
        b.iter(|| force::nonlocal_correction(black_box(200.0), &m, Geometry::PlatePlate, &opts))
    });
    g.finish();
}

criterion_group!(benches, dielectric_kernels, impedances, quadrature, correction);
criterion_main!(benches);
