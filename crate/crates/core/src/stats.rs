//! Zero statistics: expected counts, Monte Carlo first intensities,
//! two-point checks for the Bergman DPP, isometry invariance and the
//! local-extrema experiment.

use crate::error::{domain, Error, Result};
use crate::gaf::{apply_isometry, first_intensity, sample_gaf, ExtPoint, GafModel, Isometry};
use crate::geometry::Window;
use crate::noise::sample_noise;
use crate::quadrature::{GaussRule, RuleKind};
use crate::transforms::{ck_and_tail, min_truncation, transform_noise, DictionaryFamily, Domain, TransformName, TransformSpec};
use crate::zeros::{locate_zeros, sphere_zeros, ZeroSet};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt;

type C64 = Complex64;

/// Weighted tail level used when a truncation is checked or chosen.
pub const TAIL_LEVEL: f64 = 1e-8;

/// A counting region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionSpec {
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    CenteredDisk { radius: f64 },
    Disk { center: C64, radius: f64 },
    Annulus { inner: f64, outer: f64 },
    /// {|z| ≤ radius} on the sphere chart; an infinite radius is the whole
    /// extended plane.
    SphericalCap { radius: f64 },
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => write!(f, "rect[{x0},{x1}]x[{y0},{y1}]"),
            RegionSpec::CenteredDisk { radius } => write!(f, "disk(0,{radius})"),
            RegionSpec::Disk { center, radius } => write!(f, "disk({},{},{radius})", center.re, center.im),
            RegionSpec::Annulus { inner, outer } => write!(f, "annulus({inner},{outer})"),
            RegionSpec::SphericalCap { radius } => write!(f, "cap({radius})"),
        }
    }
}

impl RegionSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => x0 < x1 && y0 < y1 && [x0, x1, y0, y1].iter().all(|v| v.is_finite()),
            RegionSpec::CenteredDisk { radius } | RegionSpec::Disk { radius, .. } => radius > 0.0 && radius.is_finite(),
            RegionSpec::Annulus { inner, outer } => inner >= 0.0 && inner < outer && outer.is_finite(),
            RegionSpec::SphericalCap { radius } => radius > 0.0,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("invalid region {self}"))
        }
    }

    pub fn contains(&self, z: C64) -> bool {
        match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => z.re >= x0 && z.re <= x1 && z.im >= y0 && z.im <= y1,
            RegionSpec::CenteredDisk { radius } | RegionSpec::SphericalCap { radius } => z.norm() <= radius,
            RegionSpec::Disk { center, radius } => (z - center).norm() <= radius,
            RegionSpec::Annulus { inner, outer } => {
                let r = z.norm();
                r >= inner && r <= outer
            }
        }
    }

    pub fn max_radius(&self) -> f64 {
        match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => x0.abs().max(x1.abs()).hypot(y0.abs().max(y1.abs())),
            RegionSpec::CenteredDisk { radius } | RegionSpec::SphericalCap { radius } => radius,
            RegionSpec::Disk { center, radius } => center.norm() + radius,
            RegionSpec::Annulus { outer, .. } => outer,
        }
    }

    /// (x0, x1, y0, y1).
    pub fn bounding_rect(&self) -> (f64, f64, f64, f64) {
        match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => (x0, x1, y0, y1),
            RegionSpec::Disk { center, radius } => {
                (center.re - radius, center.re + radius, center.im - radius, center.im + radius)
            }
            _ => {
                let r = self.max_radius();
                (-r, r, -r, r)
            }
        }
    }

    /// Lebesgue area.
    pub fn area(&self) -> f64 {
        match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => (x1 - x0) * (y1 - y0),
            RegionSpec::CenteredDisk { radius } | RegionSpec::Disk { radius, .. } | RegionSpec::SphericalCap { radius } => {
                PI * radius * radius
            }
            RegionSpec::Annulus { inner, outer } => PI * (outer * outer - inner * inner),
        }
    }

    /// Radii (r0, r1) when the region is {r0 ≤ |z| ≤ r1}.
    fn radial(&self) -> Option<(f64, f64)> {
        match *self {
            RegionSpec::CenteredDisk { radius } | RegionSpec::SphericalCap { radius } => Some((0.0, radius)),
            RegionSpec::Disk { center, radius } if center == C64::new(0.0, 0.0) => Some((0.0, radius)),
            RegionSpec::Annulus { inner, outer } => Some((inner, outer)),
            _ => None,
        }
    }

    /// Image of the region under an isometry, for the cases where it is again
    /// a region of this kind: rectangles under translations and quarter
    /// turns, disks under any map that keeps their centre's image inside,
    /// annuli under rotations about the origin.
    pub fn image(&self, g: &Isometry) -> Result<RegionSpec> {
        let map = |z: C64| match apply_isometry(g, ExtPoint::Finite(z)) {
            ExtPoint::Finite(w) => Ok(w),
            ExtPoint::Infinity => domain(format!("{self} meets the pole of the isometry")),
        };
        match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => {
                let Isometry::Plane { alpha, .. } = *g else {
                    return domain("rectangles map to rectangles only under planar isometries");
                };
                let quarter = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)];
                if !quarter.iter().any(|q| (alpha - q).norm() < 1e-14) {
                    return domain("rectangles map to rectangles only under translations and quarter turns");
                }
                let a = map(C64::new(x0, y0))?;
                let b = map(C64::new(x1, y1))?;
                Ok(RegionSpec::Rect { x0: a.re.min(b.re), x1: a.re.max(b.re), y0: a.im.min(b.im), y1: a.im.max(b.im) })
            }
            RegionSpec::CenteredDisk { radius } | RegionSpec::Disk { radius, .. } | RegionSpec::SphericalCap { radius }
                if radius.is_finite() =>
            {
                let c = match *self {
                    RegionSpec::Disk { center, .. } => center,
                    _ => C64::new(0.0, 0.0),
                };
                let p: Vec<C64> = (0..3)
                    .map(|j| map(c + C64::from_polar(radius, 2.0 * PI * j as f64 / 3.0)))
                    .collect::<Result<_>>()?;
                let (center, r) = circumcircle(p[0], p[1], p[2])?;
                if (map(c)? - center).norm() >= r {
                    return domain(format!("{self} maps onto the outside of a circle"));
                }
                Ok(RegionSpec::Disk { center, radius: r })
            }
            RegionSpec::Annulus { .. } => {
                let fixes_origin = matches!(apply_isometry(g, ExtPoint::Finite(C64::new(0.0, 0.0))),
                    ExtPoint::Finite(w) if w.norm() < 1e-14);
                if fixes_origin && (g.derivative(C64::new(0.0, 0.0)).norm() - 1.0).abs() < 1e-12 {
                    Ok(*self)
                } else {
                    domain("annuli map to annuli only under rotations about the origin")
                }
            }
            RegionSpec::SphericalCap { .. } | RegionSpec::CenteredDisk { .. } | RegionSpec::Disk { .. } => {
                domain("the whole extended plane has no finite image region")
            }
        }
    }

    /// ∫_region f dA by Gauss–Legendre in Cartesian or polar coordinates.
    pub fn integrate(&self, f: &dyn Fn(C64) -> f64) -> Result<f64> {
        let rule = GaussRule::cached(RuleKind::Legendre, 48)?;
        let polar = |center: C64, r0: f64, r1: f64| -> f64 {
            let m = 128;
            let (rs, ws) = rule.on_interval(r0, r1);
            let mut total = 0.0;
            for (r, w) in rs.iter().zip(&ws) {
                let ring: f64 = (0..m).map(|j| f(center + C64::from_polar(*r, 2.0 * PI * (j as f64 + 0.5) / m as f64))).sum();
                total += w * r * ring * 2.0 * PI / m as f64;
            }
            total
        };
        Ok(match *self {
            RegionSpec::Rect { x0, x1, y0, y1 } => {
                let (xs, wx) = rule.on_interval(x0, x1);
                let (ys, wy) = rule.on_interval(y0, y1);
                let mut total = 0.0;
                for (x, a) in xs.iter().zip(&wx) {
                    for (y, b) in ys.iter().zip(&wy) {
                        total += a * b * f(C64::new(*x, *y));
                    }
                }
                total
            }
            RegionSpec::Disk { center, radius } => polar(center, 0.0, radius),
            RegionSpec::CenteredDisk { radius } => polar(C64::new(0.0, 0.0), 0.0, radius),
            RegionSpec::Annulus { inner, outer } => polar(C64::new(0.0, 0.0), inner, outer),
            RegionSpec::SphericalCap { radius } if radius.is_finite() => polar(C64::new(0.0, 0.0), 0.0, radius),
            RegionSpec::SphericalCap { .. } => {
                // |z| = t/(1−t) maps [0,1) onto [0,∞)
                let g = |z: C64| {
                    let t = z.norm();
                    let r = t / (1.0 - t);
                    let dr = 1.0 / ((1.0 - t) * (1.0 - t));
                    if t == 0.0 {
                        f(C64::new(0.0, 0.0)) * dr
                    } else {
                        f(z * (r / t)) * dr * r / t
                    }
                };
                let (ts, wt) = rule.on_interval(0.0, 1.0);
                let m = 128;
                let mut total = 0.0;
                for (t, w) in ts.iter().zip(&wt) {
                    let ring: f64 = (0..m).map(|j| g(C64::from_polar(*t, 2.0 * PI * (j as f64 + 0.5) / m as f64))).sum();
                    total += w * t * ring * 2.0 * PI / m as f64;
                }
                total
            }
        })
    }

    /// Checks that the region lies inside the model's domain.
    pub fn check_inside(&self, model: GafModel) -> Result<()> {
        self.validate()?;
        match model.domain() {
            Domain::Disk if self.max_radius() >= 1.0 => domain(format!("{self} leaves the unit disk")),
            Domain::Plane if !self.max_radius().is_finite() => domain(format!("{self} is unbounded")),
            _ => Ok(()),
        }
    }
}

fn circumcircle(a: C64, b: C64, c: C64) -> Result<(C64, f64)> {
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    if d.abs() < 1e-300 {
        return domain("image circle degenerates to a line");
    }
    let (a2, b2, c2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let ux = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d;
    let uy = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d;
    let center = C64::new(ux, uy);
    Ok((center, (a - center).norm()))
}

/// Expected number of random zeros in the region, ∫ ρ₁ dA; closed form for
/// regions centred at the origin, quadrature otherwise.
pub fn expected_count(model: GafModel, region: &RegionSpec) -> Result<f64> {
    region.check_inside(model)?;
    if let GafModel::Spherical { degree } = model {
        if let Some((r0, r1)) = region.radial() {
            let cap = |r: f64| if r.is_infinite() { 1.0 } else { r * r / (1.0 + r * r) };
            return Ok(degree as f64 * (cap(r1) - cap(r0)));
        }
    }
    if !region.max_radius().is_finite() {
        return domain(format!("{region} is unbounded"));
    }
    match (model, region.radial()) {
        (GafModel::Planar { ell }, _) => Ok(region.area() / (PI * ell * ell)),
        (GafModel::PlanarHigher { order: 0 }, _) => Ok(region.area() / PI),
        (GafModel::PlanarHigher { order: 1 }, Some((r0, r1))) => {
            let cum = |r: f64| r * r + r * r / (1.0 + r * r);
            Ok(cum(r1) - cum(r0))
        }
        (GafModel::Hyperbolic { alpha }, Some((r0, r1))) => {
            let cum = |r: f64| r * r / (1.0 - r * r);
            Ok((alpha + 1.0) * (cum(r1) - cum(r0)))
        }
        _ => {
            let err = std::sync::Mutex::new(None);
            let v = region.integrate(&|z| match first_intensity(model, z) {
                Ok(v) => v,
                Err(e) => {
                    *err.lock().unwrap() = Some(e);
                    0.0
                }
            })?;
            match err.into_inner().unwrap() {
                Some(e) => Err(e),
                None => Ok(v),
            }
        }
    }
}

/// Area of the region in the model's invariant metric (Lebesgue for the
/// planar models, dA/(1−|z|²)² on the disk, dA/(1+|z|²)² on the sphere).
pub fn metric_area(model: GafModel, region: &RegionSpec) -> Result<f64> {
    region.check_inside(model)?;
    let radial = region.radial();
    match model {
        GafModel::Planar { .. } | GafModel::PlanarHigher { .. } => Ok(region.area()),
        GafModel::Hyperbolic { .. } => match radial {
            Some((r0, r1)) => Ok(PI * (r1 * r1 / (1.0 - r1 * r1) - r0 * r0 / (1.0 - r0 * r0))),
            None => region.integrate(&|z| 1.0 / (1.0 - z.norm_sqr()).powi(2)),
        },
        GafModel::Spherical { .. } => match radial {
            Some((r0, r1)) => {
                let cap = |r: f64| if r.is_infinite() { 1.0 } else { r * r / (1.0 + r * r) };
                Ok(PI * (cap(r1) - cap(r0)))
            }
            None => region.integrate(&|z| 1.0 / (1.0 + z.norm_sqr()).powi(2)),
        },
    }
}

/// Mean and standard error (sample sd/√trials) of per-trial values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
}

impl MeanSe {
    pub fn from_values(v: &[f64]) -> MeanSe {
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = if v.len() > 1 { v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
        MeanSe { mean, se: (var / n).sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntensityBin {
    pub region: RegionSpec,
    pub metric_area: f64,
    pub observed: f64,
    pub predicted: f64,
    pub se: f64,
}

impl IntensityBin {
    /// (observed − predicted)/se; infinite when se vanishes and the two differ.
    pub fn z_score(&self) -> f64 {
        let d = self.observed - self.predicted;
        if d == 0.0 {
            0.0
        } else {
            d / self.se
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntensityReport {
    pub source: String,
    pub trials: usize,
    pub bins: Vec<IntensityBin>,
}

impl IntensityReport {
    pub fn within(&self, k: f64) -> bool {
        self.bins.iter().all(|b| b.z_score().abs() <= k)
    }
}

/// Per-trial zero counts in each region. `source(trial)` must be pure in the
/// trial index; results are collected in trial order.
pub fn count_zeros(
    source: &(dyn Fn(u64) -> Result<ZeroSet> + Sync),
    regions: &[RegionSpec],
    trials: usize,
) -> Result<Vec<Vec<f64>>> {
    if trials == 0 {
        return Err(Error::Refused("at least one trial is required".into()));
    }
    let per_trial: Vec<Vec<f64>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let zs = source(t)?;
            Ok(regions.iter().map(|r| zs.count_in(|z| r.contains(z)) as f64).collect())
        })
        .collect::<Result<_>>()?;
    Ok((0..regions.len()).map(|i| per_trial.iter().map(|row| row[i]).collect()).collect())
}

/// Monte Carlo mean counts per region against predictions.
pub fn empirical_intensity(
    source: &(dyn Fn(u64) -> Result<ZeroSet> + Sync),
    regions: &[RegionSpec],
    trials: usize,
    predict: &dyn Fn(&RegionSpec) -> Result<(f64, f64)>,
    label: &str,
) -> Result<IntensityReport> {
    let counts = count_zeros(source, regions, trials)?;
    let bins = regions
        .iter()
        .zip(&counts)
        .map(|(r, c)| {
            let (predicted, metric_area) = predict(r)?;
            let m = MeanSe::from_values(c);
            Ok(IntensityBin { region: *r, metric_area, observed: m.mean, predicted, se: m.se })
        })
        .collect::<Result<_>>()?;
    Ok(IntensityReport { source: label.to_string(), trials, bins })
}

/// Smallest window in the model's domain covering all regions.
pub fn covering_window(model: GafModel, regions: &[RegionSpec]) -> Result<Window> {
    if regions.is_empty() {
        return domain("no regions given");
    }
    for r in regions {
        r.check_inside(model)?;
    }
    match model.domain() {
        Domain::ExtendedPlane if regions.iter().any(|r| !r.max_radius().is_finite()) => Window::centered_disk(1.0),
        Domain::Disk => Window::centered_disk(regions.iter().map(|r| r.max_radius()).fold(0.0, f64::max)),
        _ => {
            let mut b = regions[0].bounding_rect();
            for r in &regions[1..] {
                let c = r.bounding_rect();
                b = (b.0.min(c.0), b.1.max(c.1), b.2.min(c.2), b.3.max(c.3));
            }
            Window::rect(b.0, b.1, b.2, b.3)
        }
    }
}

/// Truncation for sampling `model` over `window`: the given one after a tail
/// check, or the smallest with tail ≤ TAIL_LEVEL.
pub fn checked_truncation(model: GafModel, window: &Window, truncation: Option<usize>) -> Result<usize> {
    if let GafModel::Spherical { degree } = model {
        return Ok(degree);
    }
    let required = model.min_truncation(window, TAIL_LEVEL)?;
    match truncation {
        None => Ok(required),
        Some(n) if model.tail_report(window, n)?.tail <= TAIL_LEVEL => Ok(n),
        Some(n) => Err(Error::TailCondition { n, required }),
    }
}

/// Zero sets of independent model samples (stream = trial) over a window.
/// Spherical samples are located on the whole sphere.
pub fn gaf_zero_source(
    model: GafModel,
    window: Window,
    truncation: usize,
    grid: usize,
    seed: u64,
) -> impl Fn(u64) -> Result<ZeroSet> + Sync {
    move |t| {
        let s = sample_gaf(model, truncation, seed, t)?;
        match model {
            GafModel::Spherical { .. } => Ok(sphere_zeros(&s, grid)?.0),
            _ => locate_zeros(&s, &window, grid),
        }
    }
}

/// Default subdivision grid.
pub const DEFAULT_GRID: usize = 64;

/// Empirical first intensity of a GAF model over a partition of regions.
pub fn gaf_intensity(
    model: GafModel,
    regions: &[RegionSpec],
    trials: usize,
    seed: u64,
    truncation: Option<usize>,
    grid: usize,
) -> Result<IntensityReport> {
    model.validate()?;
    let window = covering_window(model, regions)?;
    let n = checked_truncation(model, &window, truncation)?;
    let source = gaf_zero_source(model, window, n, grid, seed);
    let predict = |r: &RegionSpec| Ok((expected_count(model, r)?, metric_area(model, r)?));
    empirical_intensity(&source, regions, trials, &predict, &format!("{model:?}, truncation {n}"))
}

/// Two-point intensity estimate for the zeros of the α = 0 hyperbolic GAF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPoint {
    pub z: C64,
    pub w: C64,
    /// Pseudo-hyperbolic distance |z − w|/|1 − z̄ w|.
    pub delta: f64,
    /// Estimated ρ₂(z, w).
    pub observed: f64,
    pub se: f64,
    /// Determinant prediction averaged over the distance bin (the estimator's expectation).
    pub predicted: f64,
    /// det[K(z_i, z_j)] at the pair itself.
    pub predicted_point: f64,
    /// Ordered zero pairs counted.
    pub pairs: usize,
}

impl TwoPoint {
    pub fn z_score(&self) -> f64 {
        (self.observed - self.predicted) / self.se
    }
}

/// Bergman kernel 1/(π(1 − z w̄)²).
pub fn bergman_kernel(z: C64, w: C64) -> C64 {
    let d = C64::new(1.0, 0.0) - z * w.conj();
    1.0 / (PI * d * d)
}

/// det [[K(z,z), K(z,w)], [K(w,z), K(w,w)]].
pub fn two_point_determinant(z: C64, w: C64) -> f64 {
    bergman_kernel(z, z).re * bergman_kernel(w, w).re - bergman_kernel(z, w).norm_sqr()
}

fn pseudo_distance(z: C64, w: C64) -> f64 {
    ((z - w) / (C64::new(1.0, 0.0) - z.conj() * w)).norm()
}

/// Sampling radius of the two-point estimator.
const DPP_WINDOW: f64 = 0.9;

/// Estimates ρ₂(z, w) for the α = 0 hyperbolic GAF zeros. Disk automorphisms
/// preserve the process, so ρ₂(z, w)/(ρ₁(z)ρ₁(w)) depends only on the
/// pseudo-hyperbolic distance δ. Ordered pairs (a, b) of zeros with a in a
/// centred disk D and δ(a, b) within ±binsize of δ(z, w) are counted; their
/// expectation is E[N_D]·∫_bin g(s) 2s/(1−s²)² ds, which converts the count to
/// ρ₂ in Lebesgue reference measure. Several pairs share the same samples.
pub fn dpp_two_point_checks(pairs: &[(C64, C64)], trials: usize, binsize: f64, seed: u64) -> Result<Vec<TwoPoint>> {
    if trials < 2 {
        return Err(Error::Refused("at least two trials are required".into()));
    }
    if !(binsize > 0.0) {
        return domain("bin size must be positive");
    }
    struct Plan {
        lo: f64,
        hi: f64,
        inner: f64,
    }
    let plans: Vec<Plan> = pairs
        .iter()
        .map(|&(z, w)| {
            if z.norm() >= 1.0 || w.norm() >= 1.0 {
                return domain("points must lie in the unit disk");
            }
            let d = pseudo_distance(z, w);
            if d <= binsize {
                return domain(format!("bins around {z} and {w} overlap (distance {d} ≤ bin size {binsize})"));
            }
            let (lo, hi) = (d - binsize, d + binsize);
            // a ∈ D and δ(a, b) ≤ hi keep b inside the sampling window
            let inner = (DPP_WINDOW - hi) / (1.0 - DPP_WINDOW * hi);
            if !(inner > 0.05) {
                return domain(format!("pair {z}, {w} too far apart for the sampling window"));
            }
            Ok(Plan { lo, hi, inner })
        })
        .collect::<Result<_>>()?;
    let model = GafModel::Hyperbolic { alpha: 0.0 };
    let window = Window::centered_disk(DPP_WINDOW)?;
    let n = checked_truncation(model, &window, None)?;
    let source = gaf_zero_source(model, window, n, 32, seed);
    let per_trial: Vec<Vec<f64>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let zs = source(t)?;
            let pts = &zs.points;
            Ok(plans
                .iter()
                .map(|p| {
                    let mut c = 0usize;
                    for (i, a) in pts.iter().enumerate() {
                        if a.norm() > p.inner {
                            continue;
                        }
                        for (j, b) in pts.iter().enumerate() {
                            if i != j {
                                let d = pseudo_distance(*a, *b);
                                if d >= p.lo && d < p.hi {
                                    c += 1;
                                }
                            }
                        }
                    }
                    c as f64
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let rho1 = |z: C64| 1.0 / (PI * (1.0 - z.norm_sqr()).powi(2));
    Ok(pairs
        .iter()
        .zip(&plans)
        .enumerate()
        .map(|(i, (&(z, w), p))| {
            let counts: Vec<f64> = per_trial.iter().map(|row| row[i]).collect();
            let m = MeanSe::from_values(&counts);
            let mean_inner = p.inner * p.inner / (1.0 - p.inner * p.inner);
            // ∫ 2s/(1−s²)² ds and ∫ g(s) 2s/(1−s²)² ds over the bin, g(s) = 1 − (1−s²)²
            let j = |s: f64| 1.0 / (1.0 - s * s);
            let jg = |s: f64| 1.0 / (1.0 - s * s) - s * s;
            let measure = j(p.hi) - j(p.lo);
            let scale = rho1(z) * rho1(w) / (mean_inner * measure);
            let total: f64 = counts.iter().sum();
            // rare counts: never report less spread than a Poisson count of the same mean
            let se = m.se.max((m.mean.max(1.0 / trials as f64) / trials as f64).sqrt());
            TwoPoint {
                z,
                w,
                delta: pseudo_distance(z, w),
                observed: m.mean * scale,
                se: se * scale,
                predicted: mean_inner * (jg(p.hi) - jg(p.lo)) * scale,
                predicted_point: two_point_determinant(z, w),
                pairs: total as usize,
            }
        })
        .collect())
}

/// Single-pair form of [`dpp_two_point_checks`].
pub fn dpp_two_point_check(z: C64, w: C64, trials: usize, binsize: f64, seed: u64) -> Result<TwoPoint> {
    Ok(dpp_two_point_checks(&[(z, w)], trials, binsize, seed)?[0])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    pub region: RegionSpec,
    pub image: RegionSpec,
    pub count_region: MeanSe,
    pub count_image: MeanSe,
    /// Standard error of the per-trial difference.
    pub se_diff: f64,
}

impl InvarianceReport {
    pub fn z_score(&self) -> f64 {
        let d = self.count_region.mean - self.count_image.mean;
        if d == 0.0 {
            0.0
        } else {
            d / self.se_diff
        }
    }
}

/// Mean zero counts in a region and in its isometric image, counted on the
/// same samples; the comparison uses the paired difference.
pub fn invariance_test(
    model: GafModel,
    g: &Isometry,
    region: &RegionSpec,
    trials: usize,
    seed: u64,
    grid: usize,
) -> Result<InvarianceReport> {
    model.validate()?;
    if g.domain() != model.domain() {
        return domain("isometry acts on a different geometry than the model");
    }
    let image = region.image(g)?;
    image.check_inside(model).map_err(|e| Error::Refused(format!("image region exits the domain: {e}")))?;
    let regions = [*region, image];
    let window = covering_window(model, &regions)?;
    let n = checked_truncation(model, &window, None)?;
    let source = gaf_zero_source(model, window, n, grid, seed);
    let counts = count_zeros(&source, &regions, trials)?;
    let diff: Vec<f64> = counts[0].iter().zip(&counts[1]).map(|(a, b)| a - b).collect();
    Ok(InvarianceReport {
        region: *region,
        image,
        count_region: MeanSe::from_values(&counts[0]),
        count_image: MeanSe::from_values(&counts[1]),
        se_diff: MeanSe::from_values(&diff).se,
    })
}

/// Zero sets of the order-one Bargmann transform of truncated white noise,
/// whose zeros are the critical points of the planar GAF.
pub fn extrema_source(truncation: usize, window: Window, grid: usize, seed: u64) -> Result<impl Fn(u64) -> Result<ZeroSet> + Sync> {
    let spec = TransformSpec::new(TransformName::Bargmann { order: 1 })?;
    let dict = DictionaryFamily::Weyl { order: 1 };
    let tail = ck_and_tail(dict, &window, truncation)?.tail;
    if tail > TAIL_LEVEL {
        let required = min_truncation(dict, &window, TAIL_LEVEL)?;
        return Err(Error::TailCondition { n: truncation, required });
    }
    Ok(move |t| {
        let s = transform_noise(&spec, &sample_noise(truncation, seed, t))?;
        locate_zeros(&s, &window, grid)
    })
}

/// Local-extrema experiment: counts of zeros of the order-one Bargmann
/// transform of noise against (1/π)(1 + 1/(1+|z|²)²).
pub fn extrema_experiment(
    trials: usize,
    truncation: Option<usize>,
    regions: &[RegionSpec],
    seed: u64,
    grid: usize,
) -> Result<IntensityReport> {
    let model = GafModel::PlanarHigher { order: 1 };
    let window = covering_window(model, regions)?;
    let dict = DictionaryFamily::Weyl { order: 1 };
    let n = match truncation {
        Some(n) => n,
        None => min_truncation(dict, &window, TAIL_LEVEL)?,
    };
    let source = extrema_source(n, window, grid, seed)?;
    let predict = |r: &RegionSpec| Ok((expected_count(model, r)?, r.area()));
    empirical_intensity(&source, regions, trials, &predict, &format!("extrema, truncation {n}"))
}
