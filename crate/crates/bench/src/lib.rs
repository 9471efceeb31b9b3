//! Benchmarks of the numerical kernels, shared by the `kernels` bench target.

use criterion::{BenchmarkId, Criterion};
use noisegaf::gaf::{sample_gaf, GafModel};
use noisegaf::noise::sample_noise;
use noisegaf::orthopoly::{eval_basis_upto, gram_matrix, BasisFamily};
use noisegaf::transforms::{eval_polar_fft, eval_series, transform_noise, TransformName, TransformSpec};
use noisegaf::zeros::{locate_zeros, poly_roots_oracle, rouche_certify};
use noisegaf::{Complex64, Curve, Window};
use std::f64::consts::PI;
use std::hint::black_box;

const SEED: u64 = 11;

fn noise(c: &mut Criterion) {
    let mut g = c.benchmark_group("noise");
    for n in [100usize, 1000, 10_000] {
        g.bench_with_input(BenchmarkId::new("sample", n), &n, |b, &n| b.iter(|| sample_noise(n, SEED, 3)));
    }
    g.finish();
}

fn bases(c: &mut Criterion) {
    let mut g = c.benchmark_group("bases");
    for (name, f, x) in [
        ("hermite", BasisFamily::Hermite, 1.3),
        ("charlier", BasisFamily::Charlier { a: 5.0 }, 7.0),
        ("meixner", BasisFamily::Meixner { alpha: 1.0, c: 0.5 }, 4.0),
    ] {
        g.bench_function(BenchmarkId::new("upto_100", name), |b| b.iter(|| eval_basis_upto(f, 100, black_box(x))));
    }
    g.bench_function("gram_meixner_30", |b| b.iter(|| gram_matrix(BasisFamily::Meixner { alpha: 1.2, c: 0.5 }, 30)));
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    let s = sample_gaf(GafModel::Planar { ell: 1.0 }, 400, SEED, 0).unwrap();
    let z = Complex64::new(1.1, -0.7);
    g.bench_function("horner_n400", |b| b.iter(|| eval_series(&s, black_box(z))));
    g.bench_function("circle_1024_horner", |b| {
        b.iter(|| {
            (0..1024)
                .map(|m| eval_series(&s, Complex64::from_polar(2.0, 2.0 * PI * m as f64 / 1024.0)))
                .fold(0.0, |acc, v| acc + v.norm())
        })
    });
    g.bench_function("circle_1024_fft", |b| b.iter(|| eval_polar_fft(&s, 2.0, 1024).unwrap()));
    g.finish();
}

fn zeros(c: &mut Criterion) {
    let mut g = c.benchmark_group("zeros");
    g.sample_size(20);
    let window = Window::square(2.0);
    let s = sample_gaf(GafModel::Planar { ell: 1.0 }, 200, SEED, 1).unwrap();
    g.bench_function("subdivision_planar_n200", |b| b.iter(|| locate_zeros(&s, &window, 16).unwrap()));
    g.bench_function("oracle_planar_n200", |b| b.iter(|| poly_roots_oracle(&s.monomial_coeffs()).unwrap()));
    let disk = Window::centered_disk(0.8).unwrap();
    let h = sample_gaf(GafModel::Hyperbolic { alpha: 0.0 }, 150, SEED, 2).unwrap();
    g.bench_function("subdivision_hyperbolic_disk08", |b| b.iter(|| locate_zeros(&h, &disk, 16).unwrap()));
    let spec = TransformSpec::new(TransformName::Bargmann { order: 0 }).unwrap();
    let curve = Curve::Circle { center: Complex64::new(0.0, 0.0), radius: 1.0 };
    let t = transform_noise(&spec, &sample_noise(200, SEED, 4)).unwrap();
    g.bench_function("rouche_bargmann_n200", |b| b.iter(|| rouche_certify(&t, &curve, 200, 0.1)));
    g.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    noise(c);
    bases(c);
    series(c);
    zeros(c);
}
