use super::*;
use crate::noise::sample_noise;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

struct Lcg(u64);
impl Lcg {
    fn unif(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
    fn in_disk(&mut self, r: f64) -> C64 {
        C64::from_polar(r * self.unif().sqrt(), 2.0 * PI * self.unif())
    }
}

const MODELS: [GafModel; 5] = [
    GafModel::Planar { ell: 1.0 },
    GafModel::Planar { ell: 0.7 },
    GafModel::PlanarHigher { order: 2 },
    GafModel::Hyperbolic { alpha: 0.5 },
    GafModel::Spherical { degree: 5 },
];

#[test]
fn sample_shapes() {
    assert_eq!(sample_gaf(GafModel::Spherical { degree: 3 }, 100, 5, 0).unwrap().coeffs.len(), 4);
    let h = sample_gaf(GafModel::PlanarHigher { order: 2 }, 20, 5, 0).unwrap();
    assert_eq!(h.coeffs[0], c(0.0, 0.0));
    assert_eq!(h.coeffs[1], c(0.0, 0.0));
    assert_eq!(h.deterministic_zero_order, 2);
    let p = sample_gaf(GafModel::Planar { ell: 1.0 }, 20, 5, 3).unwrap();
    let xi = sample_noise(20, 5, 3);
    for k in 0..=20 {
        let back = p.coeffs[k] * ln_factorial(k).exp().sqrt();
        assert!((back - xi.coeffs[k]).norm() < 1e-13 * (1.0 + xi.coeffs[k].norm()));
    }
    let h0 = sample_gaf(GafModel::PlanarHigher { order: 0 }, 20, 5, 3).unwrap();
    assert_eq!(h0.coeffs, p.coeffs);
    assert!(GafModel::Hyperbolic { alpha: -1.0 }.validate().is_err());
}

#[test]
fn covariance_examples() {
    let p = GafModel::Planar { ell: 1.0 };
    assert_eq!(covariance(p, c(0.0, 0.0), c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    assert!((covariance(p, c(1.0, 0.0), c(1.0, 0.0)).unwrap().re - std::f64::consts::E).abs() < 1e-15);
    let h = covariance(GafModel::PlanarHigher { order: 1 }, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    assert!((h.re - 2.0 * std::f64::consts::E).abs() < 1e-14 && h.im == 0.0);
    assert!(covariance(GafModel::Hyperbolic { alpha: 0.0 }, c(1.0, 0.0), c(0.0, 0.0)).is_err());
    let mut g = Lcg(4);
    for _ in 0..20 {
        let (z, w) = (g.in_disk(3.0), g.in_disk(3.0));
        let a = covariance(GafModel::PlanarHigher { order: 0 }, z, w).unwrap();
        let b = covariance(p, z, w).unwrap();
        assert!((a - b).norm() <= 1e-14 * b.norm());
    }
}

#[test]
fn covariance_matches_coefficient_series() {
    let mut g = Lcg(8);
    for m in MODELS {
        let r = if m.domain() == Domain::Disk { 0.8 } else { 1.5 };
        for _ in 0..5 {
            let (z, w) = (g.in_disk(r), g.in_disk(r));
            let mut s = c(0.0, 0.0);
            for k in 0..600 {
                if let Some(l) = m.ln_normalizer(k) {
                    s += (z * w.conj()).powi(k as i32) * (2.0 * l).exp();
                }
            }
            let k = covariance(m, z, w).unwrap();
            assert!((s - k).norm() < 1e-11 * k.norm().max(1.0), "{m:?}: {s} vs {k}");
        }
    }
}

#[test]
fn covariance_positive_definite() {
    let mut g = Lcg(12);
    for m in MODELS {
        let r = if m.domain() == Domain::Disk { 0.9 } else { 2.0 };
        for _ in 0..10 {
            let pts: Vec<C64> = (0..5).map(|_| g.in_disk(r)).collect();
            let k = DMatrix::from_fn(5, 5, |i, j| covariance(m, pts[i], pts[j]).unwrap());
            let ev = k.symmetric_eigenvalues();
            let scale = ev.iter().cloned().fold(1.0, f64::max);
            assert!(ev.iter().all(|e| *e >= -1e-10 * scale), "{m:?}: {ev}");
        }
    }
}

#[test]
fn empirical_covariance_converges() {
    let trials = 10_000;
    let tol = 4.0 / (trials as f64).sqrt();
    let mut g = Lcg(21);
    for m in [
        GafModel::Planar { ell: 1.0 },
        GafModel::PlanarHigher { order: 1 },
        GafModel::Hyperbolic { alpha: 0.0 },
        GafModel::Spherical { degree: 4 },
    ] {
        let pairs: Vec<(C64, C64)> = (0..5).map(|_| (g.in_disk(0.7), g.in_disk(0.7))).collect();
        let win = Window::centered_disk(0.7).unwrap();
        let n = m.default_truncation(&win).unwrap();
        let emp = empirical_covariances(m, &pairs, trials, n, 77).unwrap();
        for ((z, w), e) in pairs.iter().zip(&emp) {
            // sd of F(z)conj F(w) is √(κ(z,z)κ(w,w)); normalise by it
            let sd: f64 = (covariance(m, *z, *z).unwrap().re * covariance(m, *w, *w).unwrap().re).sqrt();
            let k = covariance(m, *z, *w).unwrap();
            assert!((e - k).norm() <= tol * sd, "{m:?} {z} {w}: {e} vs {k}");
        }
    }
    let sph = empirical_covariance(GafModel::Spherical { degree: 1 }, c(0.0, 0.0), c(1.0, 0.0), 4000, 1, 3).unwrap();
    assert!((sph - c(1.0, 0.0)).norm() < 4.0 * 2f64.sqrt() / 4000f64.sqrt());
    assert!(empirical_covariance(GafModel::Planar { ell: 1.0 }, c(0.0, 0.0), c(0.0, 0.0), 1, 5, 0).is_err());
}

#[test]
fn isometry_examples_and_laws() {
    let id = Isometry::disk(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!(apply_isometry(&id, ExtPoint::Finite(c(0.5, 0.0))), ExtPoint::Finite(c(0.5, 0.0)));
    let t: f64 = 0.8;
    let g = Isometry::disk(c(t.cosh(), 0.0), c(t.sinh(), 0.0)).unwrap();
    let im = apply_isometry(&g, ExtPoint::Finite(c(0.0, 0.0))).finite().unwrap();
    assert!((im - c(t.tanh(), 0.0)).norm() < 1e-15);
    let s = Isometry::sphere(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    assert_eq!(apply_isometry(&s, ExtPoint::Finite(c(0.0, 0.0))), ExtPoint::Infinity);
    assert_eq!(apply_isometry(&s, ExtPoint::Infinity), ExtPoint::Finite(c(0.0, 0.0)));
    assert!(Isometry::disk(c(1.0, 0.0), c(0.5, 0.0)).is_err());

    let mut r = Lcg(5);
    let th = 0.7f64;
    let (ca, sb) = (th.cos(), th.sin());
    let gs = [
        Isometry::plane(C64::from_polar(1.0, 1.1), c(0.3, -2.0)).unwrap(),
        Isometry::disk_translation(c(0.3, 0.5)).unwrap(),
        Isometry::sphere(C64::from_polar(ca, 0.4), C64::from_polar(sb, -1.3)).unwrap(),
    ];
    for g in gs {
        let h = g.compose(&g).unwrap().compose(&g.inverse()).unwrap();
        for _ in 0..20 {
            let z = r.in_disk(0.9);
            let back = apply_isometry(&g, apply_isometry(&g.inverse(), ExtPoint::Finite(z))).finite().unwrap();
            assert!((back - z).norm() < 1e-12);
            let a = apply_isometry(&h, ExtPoint::Finite(z)).finite().unwrap();
            let b = apply_isometry(&g, ExtPoint::Finite(z)).finite().unwrap();
            assert!((a - b).norm() < 1e-12);
            if g.domain() == Domain::Disk {
                assert!(b.norm() < 1.0);
            }
        }
    }
}

#[test]
fn krawtchouk_transport_two_by_two() {
    let p: f64 = 0.3;
    let q = ((1.0 - p) / p).sqrt();
    let model = GafModel::Spherical { degree: 1 };
    let s = sample_gaf(model, 1, 9, 9).unwrap();
    let (c0, c1) = (s.coeffs[0], s.coeffs[1]);
    let t = invariance_transport(model, TransportMap::KrawtchoukMap { n: 1, p }, &s, 1.0).unwrap();
    let n = (1.0 + q * q).sqrt();
    assert!((t.series.coeffs[0] - (c0 * q + c1) / n).norm() < 1e-15);
    assert!((t.series.coeffs[1] - (c0 - c1 * q) / n).norm() < 1e-15);
}

#[test]
fn transports_preserve_kernels() {
    let mut g = Lcg(31);
    let cases = [
        (GafModel::Planar { ell: 1.0 }, TransportMap::CharlierShift { a: 1.7 }, 2.0),
        (GafModel::Planar { ell: 1.0 }, TransportMap::CharlierShift { a: 1e-9 }, 2.0),
        (GafModel::Hyperbolic { alpha: 0.5 }, TransportMap::MeixnerMap { alpha: 0.5, c: 0.4 }, 0.95),
        (GafModel::Hyperbolic { alpha: -0.3 }, TransportMap::MeixnerMap { alpha: -0.3, c: 1e-9 }, 0.95),
        (GafModel::Spherical { degree: 7 }, TransportMap::KrawtchoukMap { n: 7, p: 0.2 }, 3.0),
        (GafModel::Spherical { degree: 7 }, TransportMap::KrawtchoukMap { n: 7, p: 0.5 }, 3.0),
    ];
    for (m, map, r) in cases {
        for _ in 0..50 {
            let (z, w) = (g.in_disk(r), g.in_disk(r));
            let a = transported_covariance(m, map, z, w).unwrap();
            let b = covariance(m, z, w).unwrap();
            assert!((a - b).norm() <= 1e-9 * b.norm().max(1.0), "{map:?} {z} {w}: {a} vs {b}");
        }
    }
    assert!(transported_covariance(GafModel::Planar { ell: 2.0 }, TransportMap::CharlierShift { a: 1.0 }, c(0.0, 0.0), c(0.0, 0.0)).is_err());
}

#[test]
fn transported_samples_match_pointwise() {
    let mut g = Lcg(41);
    let cases = [
        (GafModel::Planar { ell: 1.0 }, TransportMap::CharlierShift { a: 2.0 }, 2.0, 60),
        (GafModel::Hyperbolic { alpha: 0.0 }, TransportMap::MeixnerMap { alpha: 0.0, c: 0.5 }, 0.8, 120),
        (GafModel::Spherical { degree: 9 }, TransportMap::KrawtchoukMap { n: 9, p: 0.35 }, 2.0, 9),
    ];
    for (m, map, r, n) in cases {
        let s = sample_gaf(m, n, 1, 2).unwrap();
        let t = invariance_transport(m, map, &s, r).unwrap();
        assert!(t.dropped_tail < 1e-12);
        for _ in 0..20 {
            let z = g.in_disk(r);
            let (mz, tz) = map.at(z);
            let want = mz * s.eval(tz);
            let got = t.series.eval(z);
            let scale = covariance(m, z, z).unwrap().re.sqrt();
            assert!((got - want).norm() < 1e-10 * scale, "{map:?} z={z}: {got} vs {want}");
        }
    }
}

#[test]
fn edelman_kostlan_values() {
    let planar = diagonal_kernel(GafModel::Planar { ell: 1.0 });
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in -3..=3 {
        for j in -3..=3 {
            let v = edelman_kostlan_intensity(&planar, c(0.5 * i as f64, 0.5 * j as f64), 1e-3).unwrap();
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    assert!(hi - lo <= 1e-5 && (lo - 1.0 / PI).abs() < 1e-5);
    let hyp = diagonal_kernel(GafModel::Hyperbolic { alpha: 0.0 });
    assert!((edelman_kostlan_intensity(&hyp, c(0.0, 0.0), 1e-3).unwrap() - 1.0 / PI).abs() < 1e-6);
    let h1 = diagonal_kernel(GafModel::PlanarHigher { order: 1 });
    let v = edelman_kostlan_intensity(&h1, c(1.0, 0.0), 1e-3).unwrap();
    assert!((v - 1.25 / PI).abs() < 1e-6, "{v}");
    let f = first_intensity(GafModel::PlanarHigher { order: 1 }, c(1.0, 0.0)).unwrap();
    assert!((f - 1.25 / PI).abs() < 1e-15);
    assert!(edelman_kostlan_intensity(&|_| -1.0, c(0.0, 0.0), 1e-3).is_err());
    // closed forms agree with Edelman–Kostlan for every model
    let mut g = Lcg(3);
    for m in MODELS {
        let z = g.in_disk(0.7) + c(0.05, 0.0);
        let k = diagonal_kernel(m);
        let ek = edelman_kostlan_intensity(&k, z, 1e-3).unwrap();
        assert!((ek - first_intensity(m, z).unwrap()).abs() < 1e-5, "{m:?}");
    }
}

#[test]
fn truncation_defaults_meet_tail() {
    for m in MODELS {
        let w = if m.domain() == Domain::Disk { Window::centered_disk(0.9).unwrap() } else { Window::square(2.0) };
        let n = m.default_truncation(&w).unwrap();
        assert!(m.tail_report(&w, n).unwrap().tail <= 1e-8, "{m:?}");
        if !matches!(m, GafModel::Spherical { .. }) && n > 0 {
            assert!(m.tail_report(&w, n - 1).unwrap().tail > 1e-8, "{m:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disk_maps_stay_in_disk(cr in -0.9f64..0.9, ci in -0.4f64..0.4, zr in 0.0f64..0.999, th in 0.0f64..6.3) {
        let g = Isometry::disk_translation(c(cr, ci)).unwrap();
        let z = C64::from_polar(zr, th);
        let w = apply_isometry(&g, ExtPoint::Finite(z)).finite().unwrap();
        prop_assert!(w.norm() < 1.0 + 1e-12);
    }

    #[test]
    fn prefix_consistent_samples(seed in 0u64..1000, n in 1usize..60) {
        let a = sample_gaf(GafModel::Hyperbolic { alpha: 1.0 }, n, seed, 4).unwrap();
        let b = sample_gaf(GafModel::Hyperbolic { alpha: 1.0 }, n + 5, seed, 4).unwrap();
        prop_assert_eq!(&a.coeffs[..], &b.coeffs[..=n]);
    }
}
