//! The four Gaussian analytic function models: direct samplers, covariance
//! kernels, domain isometries, invariance transports and first intensities.

use crate::error::{domain, Error, Result};
use crate::geometry::Window;
use crate::noise::{sample_noise, NoiseStream};
use crate::special::{cpow, ln_binomial, ln_factorial, ln_gamma};
use crate::transforms::{
    ck_and_tail, min_truncation, AnalyticSeries, CkReport, DictionaryFamily, Domain, Provenance,
};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};
use std::f64::consts::PI;

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GafModel {
    /// Σ ξ_k z^k/(√k! ℓ^k), covariance e^{z w̄/ℓ²}.
    Planar { ell: f64 },
    /// Σ_{k≥N} ξ_k √k!/(k−N)! z^k.
    PlanarHigher { order: usize },
    /// Σ ξ_k √(Γ(k+α+1)/k!) z^k on the disk, covariance Γ(α+1)(1 − z w̄)^{−(α+1)}.
    Hyperbolic { alpha: f64 },
    /// Σ_{k≤N} ξ_k √C(N,k) z^k.
    Spherical { degree: usize },
}

impl GafModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GafModel::Planar { ell } if !(ell > 0.0 && ell.is_finite()) => domain("planar GAF needs ell > 0"),
            GafModel::Hyperbolic { alpha } if !(alpha > -1.0 && alpha.is_finite()) => {
                domain("hyperbolic GAF needs alpha > -1")
            }
            GafModel::Spherical { degree: 0 } => domain("spherical GAF needs N >= 1"),
            _ => Ok(()),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            GafModel::Planar { .. } | GafModel::PlanarHigher { .. } => Domain::Plane,
            GafModel::Hyperbolic { .. } => Domain::Disk,
            GafModel::Spherical { .. } => Domain::ExtendedPlane,
        }
    }

    /// Order of the zero every sample has at the origin.
    pub fn deterministic_zero_order(&self) -> usize {
        match *self {
            GafModel::PlanarHigher { order } => order,
            _ => 0,
        }
    }

    /// ln of the normaliser multiplying ξ_k in the monomial coefficient of z^k.
    pub fn ln_normalizer(&self, k: usize) -> Option<f64> {
        match *self {
            GafModel::Planar { ell } => Some(-0.5 * ln_factorial(k) - k as f64 * ell.ln()),
            GafModel::PlanarHigher { order } => {
                (k >= order).then(|| 0.5 * ln_factorial(k) - ln_factorial(k - order))
            }
            GafModel::Hyperbolic { alpha } => Some(0.5 * (ln_gamma(k as f64 + alpha + 1.0) - ln_factorial(k))),
            GafModel::Spherical { degree } => (k <= degree).then(|| 0.5 * ln_binomial(degree, k)),
        }
    }

    /// Weighted dictionary tail of the model over a window, Σ_{k>n} (1+k²)|normaliser_k z^k|².
    pub fn tail_report(&self, window: &Window, n: usize) -> Result<CkReport> {
        self.validate()?;
        let (dict, factor, scale) = self.tail_dictionary(window);
        let mut rep = ck_and_tail(dict, &scaled_window(window, scale)?, n)?;
        rep.ck *= factor;
        rep.tail *= factor;
        rep.remainder *= factor;
        rep.window = *window;
        Ok(rep)
    }

    /// Smallest truncation with weighted tail ≤ level over the window.
    pub fn min_truncation(&self, window: &Window, level: f64) -> Result<usize> {
        self.validate()?;
        let (dict, factor, scale) = self.tail_dictionary(window);
        if let GafModel::Spherical { degree } = *self {
            let _ = dict;
            return Ok(degree);
        }
        min_truncation(dict, &scaled_window(window, scale)?, level / factor)
    }

    /// Default truncation: weighted tail below 1e−8 over the window.
    pub fn default_truncation(&self, window: &Window) -> Result<usize> {
        self.min_truncation(window, 1e-8)
    }

    /// (dictionary, multiplicative factor, radius scale) reproducing the
    /// model's weighted tail.
    fn tail_dictionary(&self, window: &Window) -> (DictionaryFamily, f64, f64) {
        match *self {
            GafModel::Planar { ell } => (DictionaryFamily::Weyl { order: 0 }, 1.0, 1.0 / ell),
            GafModel::PlanarHigher { order } => {
                let r = window.max_radius();
                (DictionaryFamily::Weyl { order }, r.powi(2 * order as i32).max(f64::MIN_POSITIVE), 1.0)
            }
            GafModel::Hyperbolic { alpha } => (DictionaryFamily::Hyperbolic { alpha }, 1.0, 1.0),
            GafModel::Spherical { degree } => (DictionaryFamily::Spherical { degree }, 1.0, 1.0),
        }
    }
}

fn scaled_window(w: &Window, s: f64) -> Result<Window> {
    Window::centered_disk((w.max_radius() * s).max(1e-300))
}

/// A sample F(z) = Σ a_k z^k, returned as plain monomial coefficients.
pub fn sample_gaf(model: GafModel, truncation: usize, seed: u64, stream: u64) -> Result<AnalyticSeries> {
    model.validate()?;
    let n = match model {
        GafModel::Spherical { degree } => degree,
        _ => truncation,
    };
    let xi = sample_noise(n, seed, stream);
    let coeffs = xi
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, x)| match model.ln_normalizer(k) {
            Some(l) => x * l.exp(),
            None => C64::new(0.0, 0.0),
        })
        .collect();
    let mut s = AnalyticSeries::new(
        DictionaryFamily::Shifted { order: 0 },
        coeffs,
        model.domain(),
        Provenance::DirectGafSample,
    );
    s.deterministic_zero_order = model.deterministic_zero_order();
    Ok(s)
}

/// Evaluates a sample at several points without storing the series; used by
/// the Monte Carlo loops.
fn sample_values(model: GafModel, truncation: usize, seed: u64, stream: u64, pts: &[C64]) -> Vec<C64> {
    let n = match model {
        GafModel::Spherical { degree } => degree,
        _ => truncation,
    };
    let mut st = NoiseStream::new(seed, stream);
    let mut a = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let x = st.next_coeff();
        a.push(model.ln_normalizer(k).map_or(C64::new(0.0, 0.0), |l| x * l.exp()));
    }
    pts.iter()
        .map(|z| a.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c))
        .collect()
}

/// Closed-form E[F(z) conj F(w)].
pub fn covariance(model: GafModel, z: C64, w: C64) -> Result<C64> {
    model.validate()?;
    let u = z * w.conj();
    Ok(match model {
        GafModel::Planar { ell } => (u / (ell * ell)).exp(),
        GafModel::PlanarHigher { order } => {
            // N! u^N e^u L_N(−u), L_N(−u) = Σ_l C(N,l) u^l/l!
            let mut lag = C64::new(0.0, 0.0);
            for l in (0..=order).rev() {
                lag = lag * u + (ln_binomial(order, l) - ln_factorial(l)).exp();
            }
            u.powi(order as i32) * u.exp() * lag * ln_factorial(order).exp()
        }
        GafModel::Hyperbolic { alpha } => {
            if z.norm() >= 1.0 || w.norm() >= 1.0 {
                return domain("hyperbolic covariance needs |z|, |w| < 1");
            }
            cpow(C64::new(1.0, 0.0) - u, -(alpha + 1.0)) * ln_gamma(alpha + 1.0).exp()
        }
        GafModel::Spherical { degree } => (C64::new(1.0, 0.0) + u).powi(degree as i32),
    })
}

/// Sample mean of F(z_i) conj F(w_i) over `trials` independent streams
/// (stream = trial index), one mean per pair.
pub fn empirical_covariances(
    model: GafModel,
    pairs: &[(C64, C64)],
    trials: usize,
    truncation: usize,
    seed: u64,
) -> Result<Vec<C64>> {
    model.validate()?;
    if trials < 2 {
        return domain("empirical covariance needs at least two trials");
    }
    for (z, w) in pairs {
        if !model.domain().contains(*z) || !model.domain().contains(*w) {
            return domain(format!("point pair ({z}, {w}) outside the model domain"));
        }
    }
    let pts: Vec<C64> = pairs.iter().flat_map(|(z, w)| [*z, *w]).collect();
    let per_trial: Vec<Vec<C64>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let v = sample_values(model, truncation, seed, t, &pts);
            v.chunks(2).map(|p| p[0] * p[1].conj()).collect()
        })
        .collect();
    let mut acc = vec![C64::new(0.0, 0.0); pairs.len()];
    for row in &per_trial {
        for (a, v) in acc.iter_mut().zip(row) {
            *a += v;
        }
    }
    Ok(acc.into_iter().map(|a| a / trials as f64).collect())
}

pub fn empirical_covariance(model: GafModel, z: C64, w: C64, trials: usize, truncation: usize, seed: u64) -> Result<C64> {
    Ok(empirical_covariances(model, &[(z, w)], trials, truncation, seed)?[0])
}

/// A point of C ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(C64),
    Infinity,
}

impl ExtPoint {
    pub fn finite(self) -> Option<C64> {
        match self {
            ExtPoint::Finite(z) => Some(z),
            ExtPoint::Infinity => None,
        }
    }
}

/// Orientation-preserving isometries of the three geometries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Isometry {
    /// z ↦ αz + β, |α| = 1.
    Plane { alpha: C64, beta: C64 },
    /// z ↦ (az + b)/(b̄z + ā), |a|² − |b|² = 1.
    Disk { a: C64, b: C64 },
    /// z ↦ (az + b)/(−b̄z + ā), |a|² + |b|² = 1.
    Sphere { a: C64, b: C64 },
}

const GROUP_TOL: f64 = 1e-12;

impl Isometry {
    pub fn plane(alpha: C64, beta: C64) -> Result<Isometry> {
        if (alpha.norm() - 1.0).abs() > GROUP_TOL {
            return domain("planar isometry needs |alpha| = 1");
        }
        Ok(Isometry::Plane { alpha, beta })
    }

    pub fn disk(a: C64, b: C64) -> Result<Isometry> {
        if (a.norm_sqr() - b.norm_sqr() - 1.0).abs() > GROUP_TOL {
            return domain("disk isometry needs |a|^2 - |b|^2 = 1");
        }
        Ok(Isometry::Disk { a, b })
    }

    pub fn sphere(a: C64, b: C64) -> Result<Isometry> {
        if (a.norm_sqr() + b.norm_sqr() - 1.0).abs() > GROUP_TOL {
            return domain("sphere isometry needs |a|^2 + |b|^2 = 1");
        }
        Ok(Isometry::Sphere { a, b })
    }

    /// The disk automorphism sending 0 to c.
    pub fn disk_translation(c: C64) -> Result<Isometry> {
        if c.norm() >= 1.0 {
            return domain("disk translation target must lie in the disk");
        }
        let a = 1.0 / (1.0 - c.norm_sqr()).sqrt();
        Isometry::disk(C64::new(a, 0.0), c * a)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Isometry::Plane { .. } => Domain::Plane,
            Isometry::Disk { .. } => Domain::Disk,
            Isometry::Sphere { .. } => Domain::ExtendedPlane,
        }
    }

    pub fn inverse(&self) -> Isometry {
        match *self {
            Isometry::Plane { alpha, beta } => Isometry::Plane { alpha: alpha.conj(), beta: -alpha.conj() * beta },
            Isometry::Disk { a, b } => Isometry::Disk { a: a.conj(), b: -b },
            Isometry::Sphere { a, b } => Isometry::Sphere { a: a.conj(), b: -b },
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        Ok(match (*self, *other) {
            (Isometry::Plane { alpha: a1, beta: b1 }, Isometry::Plane { alpha: a2, beta: b2 }) => {
                Isometry::Plane { alpha: a1 * a2, beta: a1 * b2 + b1 }
            }
            (Isometry::Disk { a: a1, b: b1 }, Isometry::Disk { a: a2, b: b2 }) => {
                Isometry::Disk { a: a1 * a2 + b1 * b2.conj(), b: a1 * b2 + b1 * a2.conj() }
            }
            (Isometry::Sphere { a: a1, b: b1 }, Isometry::Sphere { a: a2, b: b2 }) => {
                Isometry::Sphere { a: a1 * a2 - b1 * b2.conj(), b: a1 * b2 + b1 * a2.conj() }
            }
            _ => return domain("cannot compose isometries of different geometries"),
        })
    }

    /// Möbius coefficients (p, q, r, s) of z ↦ (pz + q)/(rz + s).
    fn mobius(&self) -> (C64, C64, C64, C64) {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        match *self {
            Isometry::Plane { alpha, beta } => (alpha, beta, zero, one),
            Isometry::Disk { a, b } => (a, b, b.conj(), a.conj()),
            Isometry::Sphere { a, b } => (a, b, -b.conj(), a.conj()),
        }
    }

    /// Derivative of the map at a finite, non-polar point.
    pub fn derivative(&self, z: C64) -> C64 {
        let (p, q, r, s) = self.mobius();
        let d = r * z + s;
        (p * s - q * r) / (d * d)
    }
}

/// Image of a point, handled projectively so poles map to ∞.
pub fn apply_isometry(g: &Isometry, z: ExtPoint) -> ExtPoint {
    let (p, q, r, s) = g.mobius();
    match z {
        ExtPoint::Infinity => {
            if r == C64::new(0.0, 0.0) {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite(p / r)
            }
        }
        ExtPoint::Finite(z) => {
            let den = r * z + s;
            if den == C64::new(0.0, 0.0) {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite((p * z + q) / den)
            }
        }
    }
}

/// The multiplier-times-precomposition maps under which the models are
/// invariant in law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransportMap {
    /// e^{−a/2+√a z} F(√a − z) on the planar GAF (ℓ = 1).
    CharlierShift { a: f64 },
    /// (1−c)^{(α+1)/2}(1−√c z)^{−(α+1)} F((√c − z)/(1 − √c z)) on the hyperbolic GAF.
    MeixnerMap { alpha: f64, c: f64 },
    /// ((q+z)/√(1+q²))^N F((1 − qz)/(q + z)), q = √((1−p)/p), on the spherical GAF.
    KrawtchoukMap { n: usize, p: f64 },
}

impl TransportMap {
    fn check(&self, model: GafModel) -> Result<()> {
        let ok = match (*self, model) {
            (TransportMap::CharlierShift { a }, GafModel::Planar { ell }) => a > 0.0 && ell == 1.0,
            (TransportMap::CharlierShift { a }, GafModel::PlanarHigher { order: 0 }) => a > 0.0,
            (TransportMap::MeixnerMap { alpha, c }, GafModel::Hyperbolic { alpha: a2 }) => {
                alpha == a2 && c > 0.0 && c < 1.0
            }
            (TransportMap::KrawtchoukMap { n, p }, GafModel::Spherical { degree }) => n == degree && p > 0.0 && p < 1.0,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("{self:?} does not act on {model:?}"))
        }
    }

    /// (multiplier(z), T z) at a finite point where both are finite.
    pub fn at(&self, z: C64) -> (C64, C64) {
        let one = C64::new(1.0, 0.0);
        match *self {
            TransportMap::CharlierShift { a } => {
                let ra = a.sqrt();
                ((C64::new(-0.5 * a, 0.0) + z * ra).exp(), C64::new(ra, 0.0) - z)
            }
            TransportMap::MeixnerMap { alpha, c } => {
                let rc = c.sqrt();
                let d = one - z * rc;
                let m = cpow(d, -(alpha + 1.0)) * (0.5 * (alpha + 1.0) * (1.0 - c).ln()).exp();
                (m, (C64::new(rc, 0.0) - z) / d)
            }
            TransportMap::KrawtchoukMap { n, p } => {
                let q = ((1.0 - p) / p).sqrt();
                let m = ((z + q) / (1.0 + q * q).sqrt()).powi(n as i32);
                (m, (one - z * q) / (z + q))
            }
        }
    }
}

/// m(z) κ(Tz, Tw) conj m(w): the covariance of the transported process.
pub fn transported_covariance(model: GafModel, map: TransportMap, z: C64, w: C64) -> Result<C64> {
    map.check(model)?;
    if let TransportMap::KrawtchoukMap { n, p } = map {
        // polynomial form, free of the pole at z = −q
        let q = ((1.0 - p) / p).sqrt();
        let one = C64::new(1.0, 0.0);
        let s = (z + q) * (w.conj() + q) + (one - z * q) * (one - w.conj() * q);
        return Ok((s / (1.0 + q * q)).powi(n as i32));
    }
    let (mz, tz) = map.at(z);
    let (mw, tw) = map.at(w);
    Ok(mz * covariance(model, tz, tw)? * mw.conj())
}

/// A transported sample re-expanded in monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Transported {
    pub series: AnalyticSeries,
    /// Radius on which the re-expansion is accurate.
    pub radius: f64,
    /// Σ_{m≥len} |g_m| r^m relative to Σ_m |g_m| r^m for the dropped coefficients.
    pub dropped_tail: f64,
}

/// Applies the transport map to a sample and re-expands the result as a
/// monomial series accurate on |z| ≤ radius. Spherical samples use exact
/// polynomial algebra; planar and hyperbolic samples are re-expanded from
/// values on the circle |z| = radius.
pub fn invariance_transport(model: GafModel, map: TransportMap, sample: &AnalyticSeries, radius: f64) -> Result<Transported> {
    map.check(model)?;
    let a = sample.monomial_coeffs();
    if let TransportMap::KrawtchoukMap { n, p } = map {
        if a.len() > n + 1 {
            return domain("spherical sample longer than N+1");
        }
        let q = ((1.0 - p) / p).sqrt();
        // Σ_j a_j (1 − qz)^j (q + z)^{N−j} via P_j = a_j B^{N−j} + A P_{j+1}
        let mut acoef = vec![C64::new(0.0, 0.0); n + 1];
        acoef[..a.len()].copy_from_slice(&a);
        let mut p_poly = vec![acoef[n]];
        let mut bpow = vec![C64::new(1.0, 0.0)];
        for j in (0..n).rev() {
            bpow = poly_mul_linear(&bpow, C64::new(q, 0.0), C64::new(1.0, 0.0));
            let ap = poly_mul_linear(&p_poly, C64::new(1.0, 0.0), C64::new(-q, 0.0));
            p_poly = ap.iter().zip(&bpow).map(|(x, y)| x + acoef[j] * y).collect();
        }
        let norm = (1.0 + q * q).powf(-0.5 * n as f64);
        let coeffs = p_poly.into_iter().map(|c| c * norm).collect();
        let series = AnalyticSeries::new(DictionaryFamily::Shifted { order: 0 }, coeffs, Domain::ExtendedPlane, Provenance::DirectGafSample);
        return Ok(Transported { series, radius, dropped_tail: 0.0 });
    }
    if !(radius > 0.0) || (model.domain() == Domain::Disk && radius >= 1.0) {
        return domain(format!("transport radius {radius} outside the model domain"));
    }
    let eval = |z: C64| {
        let (m, tz) = map.at(z);
        m * a.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * tz + c)
    };
    let mut mlen = (4 * a.len()).next_power_of_two().max(64);
    loop {
        let mut buf: Vec<C64> = (0..mlen).map(|j| eval(C64::from_polar(radius, 2.0 * PI * j as f64 / mlen as f64))).collect();
        FftPlanner::new().plan_fft(mlen, FftDirection::Forward).process(&mut buf);
        let scaled: Vec<f64> = buf.iter().map(|v| v.norm() / mlen as f64).collect();
        let total: f64 = scaled.iter().sum();
        let peak = scaled.iter().cloned().fold(0.0, f64::max);
        let upper: f64 = scaled[mlen / 2..].iter().sum();
        // the upper half holds only rounding noise once the coefficients have decayed
        if scaled[mlen / 2..].iter().all(|v| *v <= 1e-13 * peak) {
            let mut tail = 0.0;
            let mut len = mlen / 2;
            while len > 1 && tail + scaled[len - 1] <= 1e-13 * total {
                tail += scaled[len - 1];
                len -= 1;
            }
            let lr = radius.ln();
            let coeffs: Vec<C64> = buf[..len]
                .iter()
                .enumerate()
                .map(|(m, v)| v / mlen as f64 * (-(m as f64) * lr).exp())
                .collect();
            let mut series = AnalyticSeries::new(DictionaryFamily::Shifted { order: 0 }, coeffs, model.domain(), Provenance::DirectGafSample);
            series.deterministic_zero_order = model.deterministic_zero_order();
            return Ok(Transported { series, radius, dropped_tail: (upper + tail) / total.max(f64::MIN_POSITIVE) });
        }
        if mlen >= 1 << 16 {
            return Err(Error::Accuracy(format!(
                "re-expansion needs more than {} coefficients at radius {radius}",
                mlen / 2
            )));
        }
        mlen *= 2;
    }
}

/// (c0 + c1 z) · P(z).
fn poly_mul_linear(p: &[C64], c0: C64, c1: C64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + 1];
    for (i, v) in p.iter().enumerate() {
        out[i] += v * c0;
        out[i + 1] += v * c1;
    }
    out
}

/// (1/4π) Δ log κ(z, z) by the five-point Laplacian with step h.
pub fn ek_laplacian(kernel: &dyn Fn(C64) -> f64, z: C64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return domain("finite-difference step must be positive");
    }
    let lk = |p: C64| -> Result<f64> {
        let v = kernel(p);
        if !(v > 0.0 && v.is_finite()) {
            return domain(format!("kernel diagonal not positive at {p}"));
        }
        Ok(v.ln())
    };
    let c = lk(z)?;
    let s = lk(z + h)? + lk(z - h)? + lk(z + C64::new(0.0, h))? + lk(z - C64::new(0.0, h))?;
    Ok((s - 4.0 * c) / (h * h) / (4.0 * PI))
}

/// Edelman–Kostlan first intensity with one Richardson step (h, h/2).
pub fn edelman_kostlan_intensity(kernel: &dyn Fn(C64) -> f64, z: C64, h: f64) -> Result<f64> {
    let coarse = ek_laplacian(kernel, z, h)?;
    let fine = ek_laplacian(kernel, z, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// κ(z, z) of the model as a closure.
pub fn diagonal_kernel(model: GafModel) -> impl Fn(C64) -> f64 {
    move |z| covariance(model, z, z).map(|c| c.re).unwrap_or(f64::NAN)
}

/// Closed-form first intensity of the random zeros (the deterministic origin
/// zero of the higher-order planar model excluded).
pub fn first_intensity(model: GafModel, z: C64) -> Result<f64> {
    model.validate()?;
    let r2 = z.norm_sqr();
    Ok(match model {
        GafModel::Planar { ell } => 1.0 / (PI * ell * ell),
        GafModel::PlanarHigher { order: 0 } => 1.0 / PI,
        GafModel::PlanarHigher { order: 1 } => (1.0 + 1.0 / (1.0 + r2).powi(2)) / PI,
        GafModel::PlanarHigher { .. } => {
            if z == C64::new(0.0, 0.0) {
                return domain("origin is a deterministic zero");
            }
            edelman_kostlan_intensity(&diagonal_kernel(model), z, 1e-3 * (1.0 + z.norm()))?
        }
        GafModel::Hyperbolic { alpha } => {
            if r2 >= 1.0 {
                return domain("point outside the disk");
            }
            (alpha + 1.0) / (PI * (1.0 - r2).powi(2))
        }
        GafModel::Spherical { degree } => degree as f64 / (PI * (1.0 + r2).powi(2)),
    })
}

#[cfg(test)]
mod tests;
