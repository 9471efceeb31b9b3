//! Verification suites: each runs one family of checks against closed forms
//! or Monte Carlo tolerances and reports measured values beside tolerances.

use crate::error::{domain, Error, Result};
use crate::gaf::{covariance, empirical_covariances, sample_gaf, GafModel};
use crate::geometry::{Curve, Window};
use crate::noise::{exceedance_from_splits, sample_noise, theta_splits, theta_tail_bracket, wasserstein2_bound};
use crate::orthopoly::{eval_basis, fourier_function, gram_matrix, generating_check, BasisFamily};
use crate::special::{ln_factorial, ln_gamma};
use crate::stats::{
    dpp_two_point_checks, extrema_experiment, gaf_intensity, RegionSpec, DEFAULT_GRID,
};
use crate::transforms::{
    basis_image, direct_transform, sample_basis_function, transform_noise, Domain, Signal, TransformName,
    TransformSpec,
};
use crate::zeros::{locate_zeros, poly_roots_oracle, poly_winding, rouche_certify, sphere_zeros, Poly};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

type C64 = Complex64;

/// One measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    /// Passes when measured ≤ tolerance.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64, detail: impl Into<String>) -> Check {
        Check { name: name.into(), measured, tolerance, pass: measured <= tolerance, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub criterion: usize,
    pub title: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {} ({:.1}s)", if self.passed() { "PASS" } else { "FAIL" }, self.title, self.seconds)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:4} {:<48} measured {:<12.4e} tolerance {:<12.4e} {}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Scales Monte Carlo trial counts and sample sizes; 1.0 runs the full
/// acceptance budgets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub scale: f64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { scale: 1.0, seed: 20240601 }
    }
}

impl Budget {
    fn count(&self, full: usize, floor: usize) -> usize {
        ((full as f64 * self.scale).round() as usize).max(floor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Transforms,
    Bases,
    Covariance,
    Intensity,
    Dpp,
    Bounds,
    Certify,
    Zeros,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "transforms" => Suite::Transforms,
            "bases" => Suite::Bases,
            "covariance" => Suite::Covariance,
            "intensity" => Suite::Intensity,
            "dpp" => Suite::Dpp,
            "bounds" => Suite::Bounds,
            "certify" => Suite::Certify,
            "zeros" => Suite::Zeros,
            "all" => Suite::All,
            _ => return domain(format!("unknown suite '{s}'")),
        })
    }
}

impl Suite {
    pub const NAMES: [&'static str; 9] =
        ["transforms", "bases", "covariance", "intensity", "dpp", "bounds", "certify", "zeros", "all"];
}

pub fn run_suite(suite: Suite, budget: &Budget) -> Result<Vec<SuiteReport>> {
    let one = |f: fn(&Budget) -> Result<SuiteReport>| -> Result<Vec<SuiteReport>> { Ok(vec![f(budget)?]) };
    match suite {
        Suite::Transforms => one(basis_images),
        Suite::Bases => one(orthonormality),
        Suite::Covariance => one(covariances),
        Suite::Intensity => one(intensities),
        Suite::Dpp => one(dpp_structure),
        Suite::Bounds => one(truncation_bounds),
        Suite::Certify => one(rouche_certification),
        Suite::Zeros => one(oracle_equivalence),
        Suite::All => {
            let all: [fn(&Budget) -> Result<SuiteReport>; 8] = [
                basis_images,
                orthonormality,
                covariances,
                intensities,
                dpp_structure,
                truncation_bounds,
                rouche_certification,
                oracle_equivalence,
            ];
            all.iter().map(|f| f(budget)).collect()
        }
    }
}

fn timed(criterion: usize, title: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Result<SuiteReport> {
    let t = Instant::now();
    let checks = f()?;
    Ok(SuiteReport { criterion, title: title.to_string(), checks, seconds: t.elapsed().as_secs_f64() })
}

struct Uniform(ChaCha8Rng);

impl Uniform {
    fn new(seed: u64) -> Uniform {
        Uniform(ChaCha8Rng::seed_from_u64(seed))
    }
    fn next(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
    fn in_disk(&mut self, center: C64, r: f64) -> C64 {
        center + C64::from_polar(r * self.next().sqrt(), 2.0 * PI * self.next())
    }
}

/// Reproducing-kernel diagonal K(z, z) of the transform's image space.
fn image_kernel_diag(spec: &TransformSpec, z: C64) -> f64 {
    let r2 = z.norm_sqr();
    match spec.name {
        TransformName::Bargmann { order } => {
            // Σ_{j≥0} (j+N)!/(j!)² r^{2j}
            let mut t = ln_factorial(order).exp();
            let mut s = t;
            for j in 1..2000 {
                t *= (j + order) as f64 / (j as f64 * j as f64) * r2;
                s += t;
                if t < 1e-18 * s && j as f64 > r2 {
                    break;
                }
            }
            s
        }
        TransformName::CharlierStft { .. } => r2.exp(),
        TransformName::BergmanDp { beta } => ln_gamma(2.0 * beta + 1.0).exp() * (1.0 - r2).powf(-(2.0 * beta + 1.0)),
        TransformName::MeixnerStft { alpha, .. } => ln_gamma(alpha + 1.0).exp() * (1.0 - r2).powf(-(alpha + 1.0)),
        TransformName::KrawtchoukStft { n, .. } => (1.0 + r2).powi(n as i32),
        TransformName::AnalyticProjection { .. } => 1.0 / (1.0 - r2),
    }
}

/// Largest admissible √K(z,z)/|image| at an evaluation point: beyond it the
/// image is below rounding of the integrals that produce it.
pub const IMAGE_CONDITION_LIMIT: f64 = 1e4;

fn basis_transform_direct(spec: &TransformSpec, k: usize, z: C64) -> Result<C64> {
    match spec.basis {
        BasisFamily::Hermite | BasisFamily::Laguerre { .. } => {
            let b = spec.basis;
            let f = move |x: f64| C64::new(eval_basis(b, k, x).unwrap_or(f64::NAN), 0.0);
            direct_transform(spec, Signal::Function(&f), z)
        }
        BasisFamily::Fourier => {
            let f = move |t: f64| fourier_function(k as i64, t);
            direct_transform(spec, Signal::Function(&f), z)
        }
        b => {
            let s = sample_basis_function(b, k)?;
            direct_transform(spec, Signal::Samples(&s), z)
        }
    }
}

/// Basis images: direct transform of f_k against the closed-form
/// image, k ≤ 30, relative error ≤ 1e−8.
pub fn basis_images(budget: &Budget) -> Result<SuiteReport> {
    timed(1, "basis images (direct transform of f_k vs closed form)", || {
        let specs = [
            TransformName::Bargmann { order: 0 },
            TransformName::Bargmann { order: 2 },
            TransformName::CharlierStft { a: 2.0 },
            TransformName::BergmanDp { beta: 0.0 },
            TransformName::BergmanDp { beta: 1.0 },
            TransformName::MeixnerStft { alpha: 0.5, c: 0.4 },
            TransformName::KrawtchoukStft { n: 30, p: 0.3 },
            TransformName::AnalyticProjection { order: 1 },
        ];
        let points = budget.count(50, 3);
        specs
            .iter()
            .enumerate()
            .map(|(si, name)| {
                let spec = TransformSpec::new(*name)?;
                let kmax = spec.basis.max_index().unwrap_or(30).min(30);
                let per_k: Vec<(f64, usize)> = (0..=kmax)
                    .into_par_iter()
                    .map(|k| {
                        let mut rng = Uniform::new(budget.seed ^ ((si as u64) << 32) ^ k as u64);
                        let (center, radius) = match spec.name {
                            TransformName::Bargmann { .. } => (C64::new(0.0, 0.0), (k as f64).sqrt() + 3.0),
                            TransformName::CharlierStft { a } => (C64::new(a.sqrt(), 0.0), (k as f64).sqrt() + 3.0),
                            TransformName::KrawtchoukStft { .. } => (C64::new(0.0, 0.0), 4.0),
                            _ => (C64::new(0.0, 0.0), 0.9),
                        };
                        let (mut worst, mut rejected, mut used) = (0.0f64, 0usize, 0usize);
                        while used < points {
                            if rejected > 200_000 {
                                return Err(Error::Numeric(format!("no well-conditioned points for {name:?} k={k}")));
                            }
                            let z = rng.in_disk(center, radius);
                            let want = basis_image(&spec, k, z)?;
                            let scale = image_kernel_diag(&spec, z).sqrt();
                            if want.norm() == 0.0 {
                                // f_k below the transform order maps to zero
                                let got = basis_transform_direct(&spec, k, z)?;
                                worst = worst.max(got.norm() / scale);
                                used += 1;
                                continue;
                            }
                            if scale > IMAGE_CONDITION_LIMIT * want.norm() {
                                rejected += 1;
                                continue;
                            }
                            let got = basis_transform_direct(&spec, k, z)?;
                            worst = worst.max((got - want).norm() / want.norm());
                            used += 1;
                        }
                        Ok((worst, rejected))
                    })
                    .collect::<Result<_>>()?;
                let worst = per_k.iter().map(|p| p.0).fold(0.0, f64::max);
                let rejected: usize = per_k.iter().map(|p| p.1).sum();
                Ok(Check::at_most(
                    format!("{name:?}"),
                    worst,
                    1e-8,
                    format!("k=0..{kmax}, {points} points each, {rejected} ill-conditioned draws skipped"),
                ))
            })
            .collect()
    })
}

/// Orthonormality and generating identities.
pub fn orthonormality(budget: &Budget) -> Result<SuiteReport> {
    timed(2, "orthonormality and generating functions", || {
        let families: [(BasisFamily, usize, f64); 7] = [
            (BasisFamily::Hermite, 30, 1e-7),
            (BasisFamily::Laguerre { two_beta: 0.0 }, 30, 1e-7),
            (BasisFamily::Laguerre { two_beta: 0.6 }, 30, 1e-7),
            (BasisFamily::Charlier { a: 5.0 }, 20, 1e-9),
            (BasisFamily::Meixner { alpha: 1.2, c: 0.5 }, 30, 1e-9),
            (BasisFamily::Krawtchouk { n: 8, p: 0.5 }, 8, 1e-9),
            (BasisFamily::Krawtchouk { n: 20, p: 0.4 }, 20, 1e-9),
        ];
        let mut checks = Vec::new();
        for (f, kmax, tol) in families {
            let g = gram_matrix(f, kmax)?;
            checks.push(Check::at_most(
                format!("gram {f:?}"),
                g.deviation_from_identity(),
                tol,
                format!("kmax={kmax}, support {}", g.support),
            ));
        }
        let points = budget.count(100, 5);
        let gen_families = [
            BasisFamily::Hermite,
            BasisFamily::Charlier { a: 2.5 },
            BasisFamily::Laguerre { two_beta: 0.6 },
            BasisFamily::Meixner { alpha: 1.2, c: 0.5 },
            BasisFamily::Krawtchouk { n: 20, p: 0.4 },
        ];
        for (i, f) in gen_families.iter().enumerate() {
            let mut rng = Uniform::new(budget.seed + 100 + i as u64);
            let mut worst = 0.0f64;
            for _ in 0..points {
                let z = rng.in_disk(C64::new(0.0, 0.0), 0.6);
                let x = match f {
                    BasisFamily::Hermite => 6.0 * rng.next() - 3.0,
                    BasisFamily::Laguerre { .. } => 0.25 + 14.0 * rng.next(),
                    BasisFamily::Krawtchouk { n, .. } => (rng.next() * (*n + 1) as f64).floor().min(*n as f64),
                    _ => (rng.next() * 15.0).floor(),
                };
                let g = generating_check(*f, x, z, 400)?;
                worst = worst.max(g.relative_residual());
            }
            checks.push(Check::at_most(format!("generating {f:?}"), worst, 1e-10, format!("{points} points, |z| ≤ 0.6")));
        }
        Ok(checks)
    })
}

/// Empirical covariances of the four models.
pub fn covariances(budget: &Budget) -> Result<SuiteReport> {
    timed(3, "covariance kernels (empirical vs closed form)", || {
        let trials = budget.count(10_000, 100);
        let tol = 4.0 / (trials as f64).sqrt();
        let mut rng = Uniform::new(budget.seed + 3);
        let models = [
            GafModel::Planar { ell: 1.0 },
            GafModel::PlanarHigher { order: 1 },
            GafModel::Hyperbolic { alpha: 0.0 },
            GafModel::Spherical { degree: 4 },
        ];
        let mut checks = Vec::new();
        for (i, m) in models.iter().enumerate() {
            let pairs: Vec<(C64, C64)> =
                (0..5).map(|_| (rng.in_disk(C64::new(0.0, 0.0), 0.7), rng.in_disk(C64::new(0.0, 0.0), 0.7))).collect();
            let n = m.default_truncation(&Window::centered_disk(0.7)?)?;
            let emp = empirical_covariances(*m, &pairs, trials, n, budget.seed + 10 + i as u64)?;
            let mut worst = 0.0f64;
            for ((z, w), e) in pairs.iter().zip(&emp) {
                let sd = (covariance(*m, *z, *z)?.re * covariance(*m, *w, *w)?.re).sqrt();
                worst = worst.max((e - covariance(*m, *z, *w)?).norm() / sd);
            }
            checks.push(Check::at_most(
                format!("{m:?}"),
                worst,
                tol,
                format!("5 pairs, {trials} trials, error in units of √(κ(z,z)κ(w,w))"),
            ));
        }
        let one = C64::new(1.0, 0.0);
        let k = covariance(GafModel::PlanarHigher { order: 1 }, one, one)?;
        checks.push(Check::at_most(
            "higher-order kernel at (1,1) vs 2e",
            (k - 2.0 * E).norm() / (2.0 * E),
            4.0 * f64::EPSILON,
            "closed form",
        ));
        Ok(checks)
    })
}

/// Mean zero counts against expected counts.
pub fn intensities(budget: &Budget) -> Result<SuiteReport> {
    timed(4, "first intensities (mean zero counts)", || {
        let trials = budget.count(500, 20);
        let mut checks = Vec::new();
        let z_check = |name: &str, rep: crate::stats::IntensityReport| -> Vec<Check> {
            rep.bins
                .iter()
                .map(|b| {
                    Check::at_most(
                        format!("{name} {}", b.region),
                        b.z_score().abs(),
                        3.0,
                        format!("observed {:.4} ± {:.4}, predicted {:.4}", b.observed, b.se, b.predicted),
                    )
                })
                .collect()
        };
        let sq = RegionSpec::Rect { x0: -3.0, x1: 3.0, y0: -3.0, y1: 3.0 };
        let rep = gaf_intensity(GafModel::Planar { ell: 1.0 }, &[sq], trials, budget.seed + 40, None, DEFAULT_GRID)?;
        checks.extend(z_check("planar", rep));
        let d = RegionSpec::CenteredDisk { radius: 0.5 };
        let rep = gaf_intensity(GafModel::Hyperbolic { alpha: 0.0 }, &[d], trials, budget.seed + 41, None, DEFAULT_GRID)?;
        checks.extend(z_check("hyperbolic", rep));
        for n in [8usize, 64] {
            let all = RegionSpec::SphericalCap { radius: f64::INFINITY };
            let rep = gaf_intensity(GafModel::Spherical { degree: n }, &[all], trials, budget.seed + 42, None, 16)?;
            let b = &rep.bins[0];
            // every trial has exactly N zeros iff the mean is N with zero spread
            let dev = (b.observed - n as f64).abs() + b.se;
            checks.push(Check::at_most(format!("spherical N={n} total count"), dev, 0.0, format!("{trials} trials")));
        }
        let ann = RegionSpec::Annulus { inner: 0.5, outer: 1.5 };
        let rep = extrema_experiment(trials, None, &[ann], budget.seed + 43, DEFAULT_GRID)?;
        checks.extend(z_check("extrema", rep));
        Ok(checks)
    })
}

/// Two-point intensities of the Bergman DPP and ordinal repulsion.
pub fn dpp_structure(budget: &Budget) -> Result<SuiteReport> {
    timed(5, "Bergman DPP two-point intensities", || {
        let trials = budget.count(20_000, 200);
        let c = C64::new;
        let pairs = [
            (c(0.0, 0.0), c(0.1, 0.0)),
            (c(0.0, 0.0), c(0.25, 0.0)),
            (c(0.0, 0.0), c(0.45, 0.0)),
            (c(0.3, 0.0), c(0.3, 0.3)),
            (c(-0.2, 0.1), c(0.15, -0.2)),
        ];
        let est = dpp_two_point_checks(&pairs, trials, 0.05, budget.seed + 50)?;
        let mut checks: Vec<Check> = est
            .iter()
            .map(|e| {
                Check::at_most(
                    format!("rho2({}, {})", e.z, e.w),
                    e.z_score().abs(),
                    4.0,
                    format!(
                        "observed {:.5} ± {:.5}, predicted {:.5} (point value {:.5}), {} pairs",
                        e.observed, e.se, e.predicted, e.predicted_point, e.pairs
                    ),
                )
            })
            .collect();
        checks.push(Check {
            name: "repulsion: near pair below far pair".into(),
            measured: est[0].observed,
            tolerance: est[2].observed,
            pass: est[0].observed < est[2].observed,
            detail: format!("delta {:.3} vs {:.3}", est[0].delta, est[2].delta),
        });
        Ok(checks)
    })
}

/// Θ-tail, concentration and Lipschitz bounds for truncated noise.
pub fn truncation_bounds(budget: &Budget) -> Result<SuiteReport> {
    timed(6, "truncation bounds", || {
        let mut checks = Vec::new();
        let worst = (1..=10_000usize)
            .into_par_iter()
            .map(|n| theta_tail_bracket(n).1 * n as f64)
            .reduce(|| 0.0, f64::max);
        checks.push(Check::at_most("n·Σ_{k>n} 1/(1+k²), n = 1..10⁴", worst, 1.0, "upper bracket of the exact tail"));
        let trials = budget.count(10_000, 200);
        for (i, n) in [10usize, 50, 100].into_iter().enumerate() {
            let m = 100 * n;
            let splits = theta_splits(n, m, trials, budget.seed + 60 + i as u64)?;
            for eps in [0.3, 0.5, 1.0] {
                let r = exceedance_from_splits(&splits, n, m, eps);
                checks.push(Check::at_most(
                    format!("P(tail > {eps}) at n={n}"),
                    r.frequency,
                    r.bound + 3.0 * r.binomial_se,
                    format!("{} of {} trials, bound {:.3e}", r.exceed, trials, r.bound),
                ));
            }
            let tails: Vec<f64> = splits.iter().map(|s| s.tail_sq).collect();
            let t = crate::stats::MeanSe::from_values(&tails);
            let w2 = wasserstein2_bound(n)?;
            checks.push(Check::at_most(
                format!("coupled W2 estimate √E‖ξ^(n) − ξ^(100n)‖²_Θ, n={n}"),
                (t.mean + 3.0 * t.se).sqrt(),
                w2.bound,
                format!("bound 1/√n; exact infinite tail {:.6e}", w2.tail()),
            ));
            let exact: f64 = (n + 1..=m).map(|k| 1.0 / (1.0 + (k * k) as f64)).sum();
            checks.push(Check::at_most(
                format!("|E‖ξ^(n) − ξ^(100n)‖²_Θ − exact| in s.e., n={n}"),
                (t.mean - exact).abs() / t.se,
                3.0,
                format!("observed {:.6e}, exact {exact:.6e}", t.mean),
            ));
            // F(θ) = min(1, ‖θ‖_Θ) on coupled truncations ξ^(n), ξ^(100n)
            let diffs: Vec<f64> = splits
                .iter()
                .map(|s| s.head_sq.sqrt().min(1.0) - (s.head_sq + s.tail_sq).sqrt().min(1.0))
                .collect();
            let ms = crate::stats::MeanSe::from_values(&diffs);
            checks.push(Check::at_most(
                format!("|E F(ξ^(n)) − E F(ξ^(100n))| + 3 s.e., n={n}"),
                ms.mean.abs() + 3.0 * ms.se,
                1.0 / (n as f64).sqrt(),
                format!("{trials} coupled trials"),
            ));
        }
        Ok(checks)
    })
}

/// Rouché certification for the Bargmann transform of noise on |z| = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoucheRun {
    pub attempted: usize,
    pub certified: usize,
    pub disagreements: usize,
}

/// Certifies samples (stream = index) until `target` certificates with
/// prob_bound ≥ `min_prob` are found, recounting each with truncation 4n.
pub fn rouche_run(n: usize, radius: f64, target: usize, min_prob: f64, seed: u64) -> Result<RoucheRun> {
    let spec = TransformSpec::new(TransformName::Bargmann { order: 0 })?;
    let curve = Curve::Circle { center: C64::new(0.0, 0.0), radius };
    let mut run = RoucheRun { attempted: 0, certified: 0, disagreements: 0 };
    let batch = 256u64;
    let mut next = 0u64;
    while run.certified < target {
        if run.attempted > 200 * target.max(1) {
            return Err(Error::Refused(format!("only {} certificates in {} samples", run.certified, run.attempted)));
        }
        let results: Vec<Option<bool>> = (next..next + batch)
            .into_par_iter()
            .map(|t| {
                let s = transform_noise(&spec, &sample_noise(n, seed, t))?;
                let cert = match rouche_certify(&s, &curve, n, 0.1) {
                    Ok(c) => c,
                    Err(Error::Refused(_)) | Err(Error::BoundaryZero(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                if cert.prob_bound < min_prob {
                    return Ok(None);
                }
                let full = transform_noise(&spec, &sample_noise(4 * n, seed, t))?;
                let count = poly_winding(&Poly::new(full.monomial_coeffs()), &curve)?;
                Ok(Some(count as usize != cert.count))
            })
            .collect::<Result<_>>()?;
        next += batch;
        for r in results {
            if run.certified == target {
                break;
            }
            run.attempted += 1;
            if let Some(disagree) = r {
                run.certified += 1;
                run.disagreements += disagree as usize;
            }
        }
    }
    Ok(run)
}

pub fn rouche_certification(budget: &Budget) -> Result<SuiteReport> {
    timed(7, "Rouché certification vs 4n recount", || {
        let target = budget.count(1000, 20);
        let run = rouche_run(200, 1.0, target, 0.999, budget.seed + 70)?;
        Ok(vec![Check::at_most(
            "disagreement rate over certified instances",
            run.disagreements as f64 / run.certified as f64,
            0.005,
            format!(
                "{} certified of {} samples (n=200, |z|=1, prob ≥ 0.999), {} disagreements",
                run.certified, run.attempted, run.disagreements
            ),
        )])
    })
}

fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let d = |x: &[C64], y: &[C64]| {
        x.iter().map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    d(a, b).max(d(b, a))
}

/// Subdivision zeros against the polynomial-root oracle.
pub fn oracle_equivalence(budget: &Budget) -> Result<SuiteReport> {
    timed(8, "subdivision zeros vs polynomial-root oracle", || {
        let samples = budget.count(50, 6);
        let seed = budget.seed + 80;
        let rows: Vec<(f64, bool, String)> = (0..samples as u64)
            .into_par_iter()
            .map(|t| {
                let (model, window, n) = match t % 3 {
                    0 => (GafModel::Planar { ell: 1.0 }, Window::square(2.0), 200),
                    1 => {
                        let w = Window::centered_disk(0.8)?;
                        let m = GafModel::Hyperbolic { alpha: 0.0 };
                        (m, w, m.default_truncation(&w)?.min(300))
                    }
                    _ => (GafModel::Spherical { degree: 60 }, Window::square(1.0), 60),
                };
                let s = sample_gaf(model, n, seed, t)?;
                let (pts, window) = if model.domain() == Domain::ExtendedPlane {
                    (sphere_zeros(&s, 16)?.0.points, None)
                } else {
                    (locate_zeros(&s, &window, 16)?.points, Some(window))
                };
                let oracle: Vec<C64> = poly_roots_oracle(&s.monomial_coeffs())?
                    .into_iter()
                    .filter(|z| window.map(|w| w.contains(*z)).unwrap_or(true))
                    .collect();
                Ok((hausdorff(&pts, &oracle), pts.len() == oracle.len(), format!("{model:?}")))
            })
            .collect::<Result<_>>()?;
        let worst = rows.iter().map(|r| r.0).fold(0.0, f64::max);
        let mismatched = rows.iter().filter(|r| !r.1).count();
        Ok(vec![
            Check::at_most("Hausdorff distance", worst, 1e-9, format!("{samples} samples, degrees 60-300")),
            Check::at_most("count mismatches", mismatched as f64, 0.0, "zeros inside the window"),
        ])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for n in Suite::NAMES {
            assert!(n.parse::<Suite>().is_ok());
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        let b = Budget { scale: 0.02, seed: 5 };
        for s in [Suite::Bases, Suite::Covariance, Suite::Zeros] {
            for r in run_suite(s, &b).unwrap() {
                assert!(r.passed(), "{r}");
            }
        }
    }
}
