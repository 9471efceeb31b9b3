use super::series::{AnalyticSeries, DictionaryFamily, Domain, Provenance};
use crate::error::{domain, Error, Result};
use crate::noise::NoiseVector;
use crate::orthopoly::{eval_basis, eval_basis_upto, BasisFamily};
use crate::quadrature::GaussRule;
use crate::special::{cpow, ln_binomial, ln_factorial, ln_gamma};
use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

type C64 = Complex64;

const MAX_NODES: usize = 1024;

/// The six transforms, each pairing a basis with a dictionary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformName {
    /// Bargmann transform of order N (Hermite → Weyl(N)).
    Bargmann { order: usize },
    /// Discrete STFT on N (Charlier → Weyl(0)).
    CharlierStft { a: f64 },
    /// Daubechies–Paul / Bergman transform (Laguerre → hyperbolic 2β).
    BergmanDp { beta: f64 },
    /// Meixner → hyperbolic α.
    MeixnerStft { alpha: f64, c: f64 },
    /// Krawtchouk → spherical N.
    KrawtchoukStft { n: usize, p: f64 },
    /// Fourier → shifted monomials z^{k−N}.
    AnalyticProjection { order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSpec {
    pub name: TransformName,
    pub basis: BasisFamily,
    pub dict: DictionaryFamily,
}

impl TransformSpec {
    pub fn new(name: TransformName) -> Result<TransformSpec> {
        let (basis, dict) = match name {
            TransformName::Bargmann { order } => (BasisFamily::Hermite, DictionaryFamily::Weyl { order }),
            TransformName::CharlierStft { a } => (BasisFamily::Charlier { a }, DictionaryFamily::Weyl { order: 0 }),
            TransformName::BergmanDp { beta } => (
                BasisFamily::Laguerre { two_beta: 2.0 * beta },
                DictionaryFamily::Hyperbolic { alpha: 2.0 * beta },
            ),
            TransformName::MeixnerStft { alpha, c } => {
                (BasisFamily::Meixner { alpha, c }, DictionaryFamily::Hyperbolic { alpha })
            }
            TransformName::KrawtchoukStft { n, p } => {
                (BasisFamily::Krawtchouk { n, p }, DictionaryFamily::Spherical { degree: n })
            }
            TransformName::AnalyticProjection { order } => {
                (BasisFamily::Fourier, DictionaryFamily::Shifted { order })
            }
        };
        basis.validate()?;
        dict.validate()?;
        Ok(TransformSpec { name, basis, dict })
    }

    /// Recovers the transform from a (basis, dictionary) pair; any other
    /// pairing is rejected.
    pub fn from_parts(basis: BasisFamily, dict: DictionaryFamily) -> Result<TransformSpec> {
        let name = match (basis, dict) {
            (BasisFamily::Hermite, DictionaryFamily::Weyl { order }) => TransformName::Bargmann { order },
            (BasisFamily::Charlier { a }, DictionaryFamily::Weyl { order: 0 }) => TransformName::CharlierStft { a },
            (BasisFamily::Laguerre { two_beta }, DictionaryFamily::Hyperbolic { alpha }) if two_beta == alpha => {
                TransformName::BergmanDp { beta: 0.5 * two_beta }
            }
            (BasisFamily::Meixner { alpha, c }, DictionaryFamily::Hyperbolic { alpha: a2 }) if alpha == a2 => {
                TransformName::MeixnerStft { alpha, c }
            }
            (BasisFamily::Krawtchouk { n, p }, DictionaryFamily::Spherical { degree }) if n == degree => {
                TransformName::KrawtchoukStft { n, p }
            }
            (BasisFamily::Fourier, DictionaryFamily::Shifted { order }) => TransformName::AnalyticProjection { order },
            _ => return domain(format!("{basis:?} does not pair with {dict:?}")),
        };
        TransformSpec::new(name)
    }

    pub fn domain(&self) -> Domain {
        self.dict.natural_domain()
    }
}

/// Input to a transform: a function (of x, of the spectral variable, or of θ
/// for the Fourier basis) or samples on N (or on a uniform θ grid).
#[derive(Clone, Copy)]
pub enum Signal<'a> {
    Function(&'a (dyn Fn(f64) -> C64 + Sync)),
    Samples(&'a [C64]),
}

/// Coefficients with a signed starting index, for the Fourier basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedCoeffs {
    pub first: i64,
    pub values: Vec<C64>,
}

impl SignedCoeffs {
    pub fn get(&self, k: i64) -> C64 {
        let i = k - self.first;
        if i < 0 || i as usize >= self.values.len() {
            C64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// Σ c_k e^{ikθ}/√(2π).
    pub fn synthesize(&self, theta: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (i, c) in self.values.iter().enumerate() {
            acc += c * C64::from_polar(1.0, (self.first + i as i64) as f64 * theta);
        }
        acc / (2.0 * PI).sqrt()
    }
}

/// Inner products ⟨f_k, f⟩ = Σ conj(f_k) f, k = 0..=kmax.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub coeffs: Vec<C64>,
    pub norm_sq: f64,
    /// ‖f‖² − Σ|⟨f_k,f⟩|², nonnegative up to rounding.
    pub parseval_defect: f64,
    /// Quadrature nodes or summation length actually used.
    pub support: usize,
}

fn close(a: &[C64], b: &[C64], scale: f64, tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * scale)
}

fn quadrature_analysis(f: &(dyn Fn(f64) -> C64 + Sync), basis: BasisFamily, kmax: usize, n: usize) -> Result<(Vec<C64>, f64)> {
    let rule = GaussRule::plain_cached(basis, n)?;
    let (nodes, weights) = (&rule.0, &rule.1);
    let mut coeffs = vec![C64::new(0.0, 0.0); kmax + 1];
    let mut norm = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        let fx = f(*x);
        if !(fx.re.is_finite() && fx.im.is_finite()) {
            return Err(Error::Numeric(format!("signal is not finite at {x}")));
        }
        norm += w * fx.norm_sqr();
        let fk = eval_basis_upto(basis, kmax, *x)?;
        for (c, v) in coeffs.iter_mut().zip(fk) {
            *c += fx * (w * v);
        }
    }
    Ok((coeffs, norm))
}

fn fourier_analysis(values: &[C64], kmax: usize) -> Vec<C64> {
    let m = values.len();
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft(m, FftDirection::Forward).process(&mut buf);
    let scale = (2.0 * PI).sqrt() / m as f64;
    (0..=kmax).map(|k| buf[k % m] * scale).collect()
}

/// ⟨f_k, f⟩ for k = 0..=kmax: exact sums for discrete bases, Gauss rules with
/// node doubling for Hermite/Laguerre, FFT on a uniform grid for Fourier.
pub fn analyze(signal: Signal<'_>, basis: BasisFamily, kmax: usize) -> Result<Analysis> {
    basis.validate()?;
    if let Some(n) = basis.max_index() {
        if kmax > n {
            return domain(format!("kmax {kmax} exceeds the {} basis functions", n + 1));
        }
    }
    let finish = |coeffs: Vec<C64>, norm_sq: f64, support: usize| {
        let e: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        Ok(Analysis { coeffs, norm_sq, parseval_defect: norm_sq - e, support })
    };
    match (basis, signal) {
        (BasisFamily::Hermite | BasisFamily::Laguerre { .. }, Signal::Function(f)) => {
            let mut n = (2 * kmax + 8).max(32);
            let (mut prev, _) = quadrature_analysis(f, basis, kmax, n)?;
            let norm;
            loop {
                let m = 2 * n;
                if m > MAX_NODES {
                    return Err(Error::Accuracy(format!(
                        "inner products did not settle with {n} quadrature nodes"
                    )));
                }
                let (next, nn) = quadrature_analysis(f, basis, kmax, m)?;
                let scale = 1.0f64.max(nn.sqrt());
                let ok = close(&prev, &next, scale, 1e-11);
                prev = next;
                n = m;
                if ok {
                    norm = nn;
                    break;
                }
            }
            finish(prev, norm, n)
        }
        (b, Signal::Samples(s)) if b.is_discrete() => {
            if let Some(n) = b.max_index() {
                if s.len() > n + 1 {
                    return domain(format!("signal has {} samples but the support is 0..={n}", s.len()));
                }
            }
            let mut coeffs = vec![C64::new(0.0, 0.0); kmax + 1];
            for (x, v) in s.iter().enumerate() {
                if *v == C64::new(0.0, 0.0) {
                    continue;
                }
                let fk = eval_basis_upto(b, kmax, x as f64)?;
                for (c, f) in coeffs.iter_mut().zip(fk) {
                    *c += v * f;
                }
            }
            let norm = s.iter().map(|v| v.norm_sqr()).sum();
            finish(coeffs, norm, s.len())
        }
        (BasisFamily::Fourier, Signal::Samples(s)) => {
            if s.len() <= kmax {
                return domain(format!("{} grid samples cannot resolve index {kmax}", s.len()));
            }
            let norm = s.iter().map(|v| v.norm_sqr()).sum::<f64>() * 2.0 * PI / s.len() as f64;
            finish(fourier_analysis(s, kmax), norm, s.len())
        }
        (BasisFamily::Fourier, Signal::Function(f)) => {
            let grid = |m: usize| -> Vec<C64> { (0..m).map(|j| f(2.0 * PI * j as f64 / m as f64)).collect() };
            let mut m = (2 * (kmax + 1)).next_power_of_two().max(64);
            let mut vals = grid(m);
            let mut prev = fourier_analysis(&vals, kmax);
            loop {
                let m2 = 2 * m;
                if m2 > 1 << 20 {
                    return Err(Error::Accuracy("Fourier coefficients did not settle".into()));
                }
                vals = grid(m2);
                let next = fourier_analysis(&vals, kmax);
                let norm = vals.iter().map(|v| v.norm_sqr()).sum::<f64>() * 2.0 * PI / m2 as f64;
                let ok = close(&prev, &next, norm.sqrt().max(1.0), 1e-12);
                prev = next;
                m = m2;
                if ok {
                    return finish(prev, norm, m);
                }
            }
        }
        (b, _) => domain(format!("signal kind does not match the {b:?} basis")),
    }
}

/// Samples of a discrete basis function f_k on its support, cut where the
/// envelope stays below 1e−18 of its running maximum for 10 consecutive points.
pub fn sample_basis_function(basis: BasisFamily, k: usize) -> Result<Vec<C64>> {
    if !basis.is_discrete() {
        return domain("only discrete bases can be sampled on N");
    }
    if let Some(n) = basis.max_index() {
        return (0..=n).map(|x| Ok(C64::new(eval_basis(basis, k, x as f64)?, 0.0))).collect();
    }
    let mode = match basis {
        BasisFamily::Charlier { a } => a,
        BasisFamily::Meixner { alpha, c } => c * (alpha + 1.0) / (1.0 - c),
        _ => 0.0,
    };
    let mut out = Vec::new();
    let (mut peak, mut quiet) = (0.0f64, 0usize);
    for x in 0.. {
        let v = eval_basis(basis, k, x as f64)?;
        peak = peak.max(v.abs());
        out.push(C64::new(v, 0.0));
        if (x as f64) > mode + k as f64 && v.abs() < 1e-18 * peak {
            quiet += 1;
            if quiet >= 10 {
                break;
            }
        } else {
            quiet = 0;
        }
        if x > 1_000_000 {
            return Err(Error::Numeric("basis function support did not close".into()));
        }
    }
    Ok(out)
}

/// The coefficient form L: re-tags ⟨f_k, f⟩-type coefficients with the
/// dictionary.
pub fn transform_coeffs(spec: &TransformSpec, inner_products: Vec<C64>) -> Result<AnalyticSeries> {
    if let Some(last) = spec.dict.last_index() {
        if inner_products.len() > last + 1 {
            return domain(format!("{} coefficients exceed the finite dictionary of size {}", inner_products.len(), last + 1));
        }
    }
    Ok(AnalyticSeries::new(spec.dict, inner_products, spec.domain(), Provenance::UserSignal))
}

/// L applied to a truncated noise vector.
pub fn transform_noise(spec: &TransformSpec, noise: &NoiseVector) -> Result<AnalyticSeries> {
    let mut c = noise.coeffs.clone();
    if let Some(last) = spec.dict.last_index() {
        c.truncate(last + 1);
    }
    let mut s = transform_coeffs(spec, c)?;
    s.provenance = Provenance::TransformedNoise;
    Ok(s)
}

/// The coefficient path for a signal: conj(analyze(f)) fed to L, matching the
/// concrete transforms that integrate conj(f) against their kernel.
pub fn transform_signal(spec: &TransformSpec, signal: Signal<'_>, kmax: usize) -> Result<AnalyticSeries> {
    let a = analyze(signal, spec.basis, kmax)?;
    transform_coeffs(spec, a.coeffs.iter().map(|c| c.conj()).collect())
}

fn hermite_phys(n: usize, y: C64) -> C64 {
    let (mut h0, mut h1) = (C64::new(1.0, 0.0), y * 2.0);
    if n == 0 {
        return h0;
    }
    for j in 1..n {
        let h2 = y * h1 * 2.0 - h0 * (2.0 * j as f64);
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Sums over quadrature rules of growing size until two consecutive sizes
/// agree to `tol` of the absolute-value sum.
fn doubling<F>(start: usize, tol: f64, mut rule_sum: F) -> Result<C64>
where
    F: FnMut(usize) -> Result<(C64, f64)>,
{
    let mut n = start;
    let (mut prev, _) = rule_sum(n)?;
    loop {
        let m = 2 * n;
        let (next, scale) = rule_sum(m)?;
        let diff = (next - prev).norm();
        if diff <= tol * scale.max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        if m >= MAX_NODES {
            if diff <= 1e-9 * scale {
                return Ok(next);
            }
            return Err(Error::Accuracy(format!("quadrature change {diff:e} at {m} nodes")));
        }
        prev = next;
        n = m;
    }
}

/// Bargmann transform of order N by Gauss–Hermite quadrature of its kernel
/// π^{−1/4}2^{−N/2} e^{−z²/2} ∫ conj f(x) H_N(x − z/√2) e^{√2xz − x²/2} dx.
pub fn bargmann_direct(signal: &(dyn Fn(f64) -> C64 + Sync), z: C64, order: usize) -> Result<C64> {
    let pref = -0.25 * PI.ln() - 0.5 * order as f64 * 2f64.ln();
    let shift = z * FRAC_1_SQRT_2;
    let sum = doubling(64, 1e-13, |n| {
        let rule = GaussRule::plain_cached(BasisFamily::Hermite, n)?;
        let mut acc = C64::new(0.0, 0.0);
        let mut abs = 0.0;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let e = (z * (2f64.sqrt() * x) - 0.5 * x * x).exp();
            let t = signal(*x).conj() * hermite_phys(order, C64::new(*x, 0.0) - shift) * e * *w;
            acc += t;
            abs += t.norm();
        }
        Ok((acc, abs))
    })?;
    Ok(sum * (C64::new(pref, 0.0) - z * z * 0.5).exp())
}

/// Σ_x conj f(x) z^x/√x!.
pub fn charlier_stft(signal: &[C64], z: C64) -> C64 {
    let mut t = C64::new(1.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for (x, v) in signal.iter().enumerate() {
        if x > 0 {
            t = t * z / (x as f64).sqrt();
        }
        acc += v.conj() * t;
    }
    acc
}

/// Σ_x conj f(x) √(Γ(x+α+1)/x!) z^x, |z| < 1.
pub fn meixner_stft(signal: &[C64], z: C64, alpha: f64) -> Result<C64> {
    if z.norm() >= 1.0 {
        return domain("Meixner transform needs |z| < 1");
    }
    if !(alpha > -1.0) {
        return domain("Meixner transform needs alpha > -1");
    }
    let mut t = C64::new((0.5 * ln_gamma(alpha + 1.0)).exp(), 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for (x, v) in signal.iter().enumerate() {
        if x > 0 {
            let xf = x as f64;
            t = t * z * ((xf + alpha) / xf).sqrt();
        }
        acc += v.conj() * t;
    }
    Ok(acc)
}

/// Σ_{x≤N} conj f(x) √C(N,x) z^x.
pub fn krawtchouk_stft(signal: &[C64], z: C64, n: usize) -> Result<C64> {
    if signal.len() > n + 1 {
        return domain(format!("signal longer than N+1 = {}", n + 1));
    }
    let mut t = C64::new(1.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for (x, v) in signal.iter().enumerate() {
        if x > 0 {
            let xf = x as f64;
            t = t * z * ((n as f64 - xf + 1.0) / xf).sqrt();
        }
        acc += v.conj() * t;
    }
    Ok(acc)
}

/// (2π)^{−1/2} ∫ conj f(θ) e^{iNθ}/(1 − z e^{iθ}) dθ by the trapezoidal rule,
/// doubled until settled (the error decays like |z|^M).
pub fn analytic_projection_direct(signal: &(dyn Fn(f64) -> C64 + Sync), z: C64, order: usize) -> Result<C64> {
    if z.norm() >= 1.0 {
        return domain("analytic projection needs |z| < 1");
    }
    let eval = |m: usize| -> (C64, f64) {
        let mut acc = C64::new(0.0, 0.0);
        let mut abs = 0.0;
        for j in 0..m {
            let th = 2.0 * PI * j as f64 / m as f64;
            let e = C64::from_polar(1.0, th);
            let t = signal(th).conj() * C64::from_polar(1.0, order as f64 * th) / (C64::new(1.0, 0.0) - z * e);
            acc += t;
            abs += t.norm();
        }
        let h = (2.0 * PI).sqrt() / m as f64;
        (acc * h, abs * h)
    };
    let mut m = 64;
    let (mut prev, _) = eval(m);
    loop {
        m *= 2;
        let (next, abs) = eval(m);
        if (next - prev).norm() <= 1e-14 * abs.max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        if m >= 1 << 20 {
            return Err(Error::Accuracy("analytic projection quadrature did not settle".into()));
        }
        prev = next;
    }
}

/// Analytic projection of the signal Σ c_k e^{ikθ}/√(2π).
pub fn analytic_projection(coeffs: &SignedCoeffs, z: C64, order: usize) -> Result<C64> {
    let f = |th: f64| coeffs.synthesize(th);
    analytic_projection_direct(&f, z, order)
}

/// (1−z)^{−(2β+1)} ∫_0^∞ conj \hat f(x) x^β e^{−x(1+z)/(2(1−z))} dx, |z| < 1, by
/// Gauss–Laguerre after x = t/μ with μ = (1 + Re s)/2, s = (1+z)/(1−z).
pub fn bergman_dp(fhat: &(dyn Fn(f64) -> C64 + Sync), z: C64, beta: f64) -> Result<C64> {
    if z.norm() >= 1.0 {
        return domain("Bergman transform needs |z| < 1");
    }
    if !(2.0 * beta > -1.0) {
        return domain("Bergman transform needs 2β > -1");
    }
    let one = C64::new(1.0, 0.0);
    let s = (one + z) / (one - z);
    let mu = 0.5 * (1.0 + s.re);
    let basis = BasisFamily::Laguerre { two_beta: 2.0 * beta };
    let sum = doubling(64, 1e-13, |n| {
        let rule = GaussRule::plain_cached(basis, n)?;
        let mut acc = C64::new(0.0, 0.0);
        let mut abs = 0.0;
        for (t, w) in rule.0.iter().zip(&rule.1) {
            let x = t / mu;
            let e = (C64::new(beta * x.ln(), 0.0) - s * (0.5 * x)).exp();
            let term = fhat(x).conj() * e * (*w / mu);
            acc += term;
            abs += term.norm();
        }
        Ok((acc, abs))
    })?;
    Ok(sum * cpow(one - z, -(2.0 * beta + 1.0)))
}

/// φ(w) = (2w − i)/(2w + i), upper half-plane → disk.
pub fn half_plane_to_disk(w: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    (w * 2.0 - i) / (w * 2.0 + i)
}

/// √(2π) s^{β+1/2} / (Γ(β+1) i^{β+1}).
fn dp_constant(s: f64, beta: f64) -> C64 {
    let modulus = ((2.0 * PI).ln() * 0.5 + (beta + 0.5) * s.ln() - ln_gamma(beta + 1.0)).exp();
    C64::from_polar(modulus, -0.5 * PI * (beta + 1.0))
}

/// Daubechies–Paul wavelet transform at (u, s) through the Bergman transform:
/// constant · (1/2 − iw)^{−2β−1} · bergman_dp(φ(w)), w = u + is.
pub fn dp_wavelet(fhat: &(dyn Fn(f64) -> C64 + Sync), u: f64, s: f64, beta: f64) -> Result<C64> {
    if !(s > 0.0) {
        return domain("wavelet scale must be positive");
    }
    let w = C64::new(u, s);
    let i = C64::new(0.0, 1.0);
    let b = bergman_dp(fhat, half_plane_to_disk(w), beta)?;
    Ok(dp_constant(s, beta) * cpow(C64::new(0.5, 0.0) - i * w, -(2.0 * beta + 1.0)) * b)
}

/// The same wavelet coefficient from the spectral integral
/// constant · ∫_0^∞ conj \hat f(ω) ω^β e^{iω(u+is)} dω.
pub fn dp_wavelet_spectral(fhat: &(dyn Fn(f64) -> C64 + Sync), u: f64, s: f64, beta: f64) -> Result<C64> {
    if !(s > 0.0) {
        return domain("wavelet scale must be positive");
    }
    let w = C64::new(u, s);
    let i = C64::new(0.0, 1.0);
    let basis = BasisFamily::Laguerre { two_beta: 2.0 * beta };
    let mu = 0.5 + s;
    let sum = doubling(64, 1e-13, |n| {
        let rule = GaussRule::plain_cached(basis, n)?;
        let mut acc = C64::new(0.0, 0.0);
        let mut abs = 0.0;
        for (t, wt) in rule.0.iter().zip(&rule.1) {
            let x = t / mu;
            let e = (C64::new(beta * x.ln(), 0.0) + i * w * x).exp();
            let term = fhat(x).conj() * e * (*wt / mu);
            acc += term;
            abs += term.norm();
        }
        Ok((acc, abs))
    })?;
    Ok(dp_constant(s, beta) * sum)
}

/// Direct (kernel or weighted-sum) form of the transform of `spec`.
pub fn direct_transform(spec: &TransformSpec, signal: Signal<'_>, z: C64) -> Result<C64> {
    match (spec.name, signal) {
        (TransformName::Bargmann { order }, Signal::Function(f)) => bargmann_direct(f, z, order),
        (TransformName::CharlierStft { .. }, Signal::Samples(s)) => Ok(charlier_stft(s, z)),
        (TransformName::BergmanDp { beta }, Signal::Function(f)) => bergman_dp(f, z, beta),
        (TransformName::MeixnerStft { alpha, .. }, Signal::Samples(s)) => meixner_stft(s, z, alpha),
        (TransformName::KrawtchoukStft { n, .. }, Signal::Samples(s)) => krawtchouk_stft(s, z, n),
        (TransformName::AnalyticProjection { order }, Signal::Function(f)) => {
            analytic_projection_direct(f, z, order)
        }
        (name, _) => domain(format!("signal kind does not match {name:?}")),
    }
}

fn krawtchouk_q(p: f64) -> f64 {
    ((1.0 - p) / p).sqrt()
}

/// The direct transform evaluated through basis coefficients c_k = ⟨f_k, f⟩:
/// multiplier(z) · Σ conj(c_k) Ψ_k(T z), with the Möbius map T and multiplier
/// of each transform's transport identity (identity map for the three
/// transforms whose kernel already is the dictionary kernel).
pub fn composed_transform(spec: &TransformSpec, coeffs: &[C64], z: C64) -> Result<C64> {
    let conj: Vec<C64> = coeffs.iter().map(|c| c.conj()).collect();
    let one = C64::new(1.0, 0.0);
    match spec.name {
        TransformName::Bargmann { .. } | TransformName::BergmanDp { .. } | TransformName::AnalyticProjection { .. } => {
            if spec.domain() == Domain::Disk && z.norm() >= 1.0 {
                return domain("point outside the unit disk");
            }
            Ok(transform_coeffs(spec, conj)?.eval(z))
        }
        TransformName::CharlierStft { a } => {
            let s = transform_coeffs(spec, conj)?;
            let ra = a.sqrt();
            Ok((C64::new(-0.5 * a, 0.0) + z * ra).exp() * s.eval(C64::new(ra, 0.0) - z))
        }
        TransformName::MeixnerStft { alpha, c } => {
            if z.norm() >= 1.0 {
                return domain("Meixner transform needs |z| < 1");
            }
            let s = transform_coeffs(spec, conj)?;
            let rc = c.sqrt();
            let d = one - z * rc;
            let tz = (C64::new(rc, 0.0) - z) / d;
            let m = cpow(d, -(alpha + 1.0)) * (0.5 * (alpha + 1.0) * (1.0 - c).ln()).exp();
            Ok(m * s.eval(tz))
        }
        TransformName::KrawtchoukStft { n, p } => {
            if conj.len() > n + 1 {
                return domain("too many Krawtchouk coefficients");
            }
            let q = krawtchouk_q(p);
            let a = one - z * q;
            let b = z + q;
            let mut acc = C64::new(0.0, 0.0);
            for (k, ck) in conj.iter().enumerate() {
                let w = (0.5 * ln_binomial(n, k)).exp();
                acc += ck * w * a.powi(k as i32) * b.powi((n - k) as i32);
            }
            Ok(acc * (1.0 + q * q).powf(-0.5 * n as f64))
        }
    }
}

/// Closed-form image of the basis function f_k under the direct transform.
pub fn basis_image(spec: &TransformSpec, k: usize, z: C64) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Ok(match spec.name {
        TransformName::Bargmann { order } => {
            if k < order {
                zero
            } else {
                z.powi((k - order) as i32) * (0.5 * ln_factorial(k) - ln_factorial(k - order)).exp()
            }
        }
        TransformName::CharlierStft { a } => {
            let ra = a.sqrt();
            (C64::new(-0.5 * a - 0.5 * ln_factorial(k), 0.0) + z * ra).exp() * (C64::new(ra, 0.0) - z).powi(k as i32)
        }
        TransformName::BergmanDp { beta } => {
            if z.norm() >= 1.0 {
                return domain("point outside the unit disk");
            }
            z.powi(k as i32) * (0.5 * (ln_gamma(k as f64 + 2.0 * beta + 1.0) - ln_factorial(k))).exp()
        }
        TransformName::MeixnerStft { alpha, c } => {
            if z.norm() >= 1.0 {
                return domain("point outside the unit disk");
            }
            let rc = c.sqrt();
            let lw = 0.5 * (ln_gamma(k as f64 + alpha + 1.0) - ln_factorial(k)) + 0.5 * (alpha + 1.0) * (1.0 - c).ln();
            (C64::new(rc, 0.0) - z).powi(k as i32) * cpow(one - z * rc, -(alpha + 1.0) - k as f64) * lw.exp()
        }
        TransformName::KrawtchoukStft { n, p } => {
            if k > n {
                return domain("index beyond N");
            }
            let q = krawtchouk_q(p);
            let lw = 0.5 * (ln_binomial(n, k) - n as f64 * (1.0 + q * q).ln());
            (one - z * q).powi(k as i32) * (z + q).powi((n - k) as i32) * lw.exp()
        }
        TransformName::AnalyticProjection { order } => {
            if z.norm() >= 1.0 {
                return domain("point outside the unit disk");
            }
            if k < order {
                zero
            } else {
                z.powi((k - order) as i32)
            }
        }
    })
}
