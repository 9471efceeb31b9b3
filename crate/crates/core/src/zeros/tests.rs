use super::*;
use crate::gaf::{sample_gaf, GafModel};
use crate::noise::sample_noise;
use crate::transforms::{transform_noise, Domain, Provenance, TransformName, TransformSpec};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mono(coeffs: Vec<C64>) -> AnalyticSeries {
    AnalyticSeries::new(DictionaryFamily::Shifted { order: 0 }, coeffs, Domain::Plane, Provenance::UserSignal)
}

fn from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![c(1.0, 0.0)];
    for r in roots {
        let mut q = vec![c(0.0, 0.0); p.len() + 1];
        for (j, a) in p.iter().enumerate() {
            q[j + 1] += a;
            q[j] -= a * r;
        }
        p = q;
    }
    p
}

fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    let d = |x: &[C64], y: &[C64]| {
        x.iter().map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    d(a, b).max(d(b, a))
}

#[test]
fn winding_examples() {
    let z = mono(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    assert_eq!(winding_number(&z, &Window::square(0.5)).unwrap(), 1);
    let z2m1 = mono(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    assert_eq!(winding_number(&z2m1, &Window::square(2.0)).unwrap(), 2);
    let z2 = mono(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    assert_eq!(winding_number(&z2, &Window::square(1e-3)).unwrap(), 2);
}

#[test]
fn zero_on_boundary_is_reported() {
    let z = mono(vec![c(-1.0, 0.0), c(1.0, 0.0)]);
    let w = Window::rect(0.0, 1.0, -0.5, 0.5).unwrap();
    assert!(matches!(winding_number(&z, &w), Err(Error::BoundaryZero(_))));
}

#[test]
fn locates_constructed_roots() {
    let s = mono(from_roots(&[c(0.5, 0.0), c(0.0, -0.25)]));
    let zs = locate_zeros(&s, &Window::square(1.0), 8).unwrap();
    assert_eq!(zs.points.len(), 2);
    assert!((zs.points[0] - c(0.0, -0.25)).norm() < 1e-12);
    assert!((zs.points[1] - c(0.5, 0.0)).norm() < 1e-12);
    assert_eq!(zs.method, ZeroMethod::Subdivision);
}

#[test]
fn root_on_grid_line_is_found() {
    // zeros exactly on internal edges of the 4×4 grid over [−1,1]²
    let s = mono(from_roots(&[c(0.0, 0.3), c(0.5, 0.5), c(-0.5, -0.7)]));
    let zs = locate_zeros(&s, &Window::square(1.0), 4).unwrap();
    assert_eq!(zs.count(), 3);
    for r in [c(0.0, 0.3), c(0.5, 0.5), c(-0.5, -0.7)] {
        assert!(zs.points.iter().any(|p| (p - r).norm() < 1e-12));
    }
}

#[test]
fn multiple_zero_counts_multiplicity() {
    let s = mono(from_roots(&[c(0.2, 0.1), c(0.2, 0.1), c(-0.4, 0.3)]));
    let zs = locate_zeros(&s, &Window::square(1.0), 5).unwrap();
    assert_eq!(zs.count(), 3);
    let dbl = zs.points.iter().zip(&zs.multiplicities).find(|(_, m)| **m == 2).unwrap();
    assert!((dbl.0 - c(0.2, 0.1)).norm() < 1e-6);
}

#[test]
fn deterministic_origin_zero_is_excluded() {
    let s = sample_gaf(GafModel::PlanarHigher { order: 2 }, 60, 3, 0).unwrap();
    let zs = locate_zeros(&s, &Window::square(2.0), 16).unwrap();
    assert_eq!(zs.excluded_deterministic, vec![(c(0.0, 0.0), 2)]);
    assert!(zs.points.iter().all(|p| p.norm() > 1e-6));
}

#[test]
fn oracle_examples() {
    let r = poly_roots_oracle(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14 && (r[1] - c(1.0, 0.0)).norm() < 1e-14);
    assert_eq!(poly_roots_oracle(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap(), vec![c(0.0, 0.0)]);
    assert!(matches!(poly_roots_oracle(&vec![c(1.0, 0.0); 600]), Err(Error::Refused(_))));
}

#[test]
fn oracle_residuals_degree_50() {
    let xi = sample_noise(50, 77, 0).coeffs;
    let norm = xi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let roots = poly_roots_oracle(&xi).unwrap();
    assert_eq!(roots.len(), 50);
    let p = Poly::new(xi.clone());
    for r in roots {
        // residual relative to the coefficient norm at the root's scale
        let res = p.eval(r).norm() / r.norm().max(1.0).powi(50);
        assert!(res < 1e-10 * norm, "residual {res}");
    }
}

#[test]
fn oracle_matches_vieta() {
    let want = [c(0.3, -2.0), c(-1.5, 0.5), c(4.0, 4.0), c(0.01, 0.0)];
    let got = poly_roots_oracle(&from_roots(&want)).unwrap();
    assert!(hausdorff(&got, &want) < 1e-12);
}

#[test]
fn subdivision_matches_oracle_on_planar_sample() {
    let s = sample_gaf(GafModel::Planar { ell: 1.0 }, 200, 11, 0).unwrap();
    let w = Window::square(2.0);
    let zs = locate_zeros(&s, &w, 16).unwrap();
    let oracle: Vec<C64> = poly_roots_oracle(&s.monomial_coeffs()).unwrap().into_iter().filter(|z| w.contains(*z)).collect();
    assert_eq!(zs.count(), oracle.len());
    assert!(hausdorff(&zs.points, &oracle) < 1e-9);
    for r in &zs.residuals {
        assert!(*r < 1e-12 * 10.0);
    }
}

#[test]
fn spherical_sample_has_degree_many_zeros() {
    let s = sample_gaf(GafModel::Spherical { degree: 12 }, 12, 5, 1).unwrap();
    let (zs, inf) = sphere_zeros(&s, 12).unwrap();
    assert_eq!(zs.count() + inf, 12);
    let oracle = poly_roots_oracle(&s.monomial_coeffs()).unwrap();
    assert!(hausdorff(&zs.points, &oracle) < 1e-9);
}

#[test]
fn disk_window_filters_points() {
    let s = mono(from_roots(&[c(0.5, 0.5), c(0.1, 0.0)]));
    let zs = locate_zeros(&s, &Window::centered_disk(0.6).unwrap(), 6).unwrap();
    assert_eq!(zs.points, vec![zs.points[0]]);
    assert!((zs.points[0] - c(0.1, 0.0)).norm() < 1e-12);
}

#[test]
fn hyperbolic_window_must_stay_in_disk() {
    let s = sample_gaf(GafModel::Hyperbolic { alpha: 0.0 }, 50, 1, 0).unwrap();
    assert!(locate_zeros(&s, &Window::square(1.0), 4).is_err());
}

#[test]
fn probability_examples() {
    let (p, vac) = rouche_probability(25, 1.0);
    assert!((p - (1.0 - 2.0 * (-12.5f64).exp())).abs() < 1e-15);
    assert!((p - 0.9999925).abs() < 1e-7 && !vac);
    let (p, vac) = rouche_probability(1, 1.0);
    assert_eq!(p, 0.0);
    assert!(vac);
}

fn bargmann(n: usize, seed: u64) -> AnalyticSeries {
    let spec = TransformSpec::new(TransformName::Bargmann { order: 0 }).unwrap();
    transform_noise(&spec, &sample_noise(n, seed, 0)).unwrap()
}

#[test]
fn rouche_certificate_fields() {
    let s = bargmann(100, 4);
    let curve = Curve::Circle { center: c(0.0, 0.0), radius: 1.0 };
    let cert = rouche_certify(&s, &curve, 100, 0.1).unwrap();
    assert!(cert.tail_ok && cert.tail <= 1.0);
    assert!(cert.eps > 0.0 && cert.eps < cert.boundary_min);
    let (p, _) = rouche_probability(100, cert.eps);
    assert_eq!(cert.prob_bound, p);
    let oracle = poly_roots_oracle(&s.monomial_coeffs()).unwrap();
    assert_eq!(cert.count, oracle.iter().filter(|z| z.norm() < 1.0).count());
}

#[test]
fn rouche_refuses_failed_tail() {
    let s = bargmann(10, 4);
    let curve = Curve::Circle { center: c(0.0, 0.0), radius: 3.0 };
    match rouche_certify(&s, &curve, 10, 0.1) {
        Err(Error::TailCondition { n, required }) => {
            assert_eq!(n, 10);
            assert!(required > 10);
        }
        other => panic!("expected tail refusal, got {other:?}"),
    }
}

#[test]
fn rouche_rejects_wrong_length() {
    let s = bargmann(10, 4);
    let curve = Curve::Circle { center: c(0.0, 0.0), radius: 0.5 };
    assert!(rouche_certify(&s, &curve, 9, 0.1).is_err());
}

#[test]
fn rouche_recount_agrees() {
    let curve = Curve::Circle { center: c(0.0, 0.0), radius: 1.0 };
    for seed in 0..20 {
        let s = bargmann(100, seed);
        let Ok(cert) = rouche_certify(&s, &curve, 100, 0.1) else { continue };
        let full = bargmann(400, seed);
        let p = Poly::new(full.monomial_coeffs());
        assert_eq!(poly_winding(&p, &curve).unwrap() as usize, cert.count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn winding_is_additive(seed in 0u64..1000) {
        let s = sample_gaf(GafModel::Planar { ell: 1.0 }, 60, seed, 0).unwrap();
        let whole = Window::rect(-1.5, 1.5, -1.5, 1.5).unwrap();
        let quads = [
            Window::rect(-1.5, 0.0, -1.5, 0.0).unwrap(),
            Window::rect(0.0, 1.5, -1.5, 0.0).unwrap(),
            Window::rect(-1.5, 0.0, 0.0, 1.5).unwrap(),
            Window::rect(0.0, 1.5, 0.0, 1.5).unwrap(),
        ];
        let total = winding_number(&s, &whole).unwrap();
        let parts: Result<Vec<i64>> = quads.iter().map(|q| winding_number(&s, q)).collect();
        if let Ok(parts) = parts {
            prop_assert_eq!(parts.iter().sum::<i64>(), total);
        }
    }

    #[test]
    fn located_count_matches_winding(seed in 0u64..1000, grid in 3usize..12) {
        let s = sample_gaf(GafModel::Planar { ell: 1.0 }, 80, seed, 2).unwrap();
        let w = Window::rect(-1.7, 1.9, -1.3, 2.1).unwrap();
        let zs = locate_zeros(&s, &w, grid).unwrap();
        prop_assert_eq!(zs.count() as i64, winding_number(&s, &w).unwrap());
        for (p, r) in zs.points.iter().zip(&zs.residuals) {
            prop_assert!(w.contains(*p));
            prop_assert!(*r <= 1e-11 * Poly::from_series(&s).scale(*p));
        }
        for pair in zs.points.windows(2) {
            prop_assert!((pair[0].re, pair[0].im) <= (pair[1].re, pair[1].im));
        }
    }
}


#[test]
fn hyperbolic_disk_window_matches_oracle() {
    let model = GafModel::Hyperbolic { alpha: 0.0 };
    let w = Window::centered_disk(0.9).unwrap();
    let n = model.default_truncation(&w).unwrap();
    let s = sample_gaf(model, n, 8, 0).unwrap();
    let zs = locate_zeros(&s, &w, 8).unwrap();
    let oracle: Vec<C64> = poly_roots_oracle(&s.monomial_coeffs()).unwrap().into_iter().filter(|z| w.contains(*z)).collect();
    assert_eq!(zs.count(), oracle.len());
    assert!(hausdorff(&zs.points, &oracle) < 1e-9);
}
