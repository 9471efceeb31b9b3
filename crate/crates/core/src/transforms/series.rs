use crate::error::{domain, Error, Result};
use crate::special::{ln_binomial, ln_factorial, ln_gamma};
use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// Where a series lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Plane,
    Disk,
    /// C ∪ {∞}; finite points are evaluated directly.
    ExtendedPlane,
}

impl Domain {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Domain::Disk => z.norm() < 1.0,
            _ => z.re.is_finite() && z.im.is_finite(),
        }
    }
}

/// The analytic families Ψ_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DictionaryFamily {
    /// √(k!)/(k−N)! z^{k−N} for k ≥ N, else 0.
    Weyl { order: usize },
    /// √(Γ(k+α+1)/k!) z^k.
    Hyperbolic { alpha: f64 },
    /// √C(N,k) z^k for k ≤ N.
    Spherical { degree: usize },
    /// z^{k−N} for k ≥ N, else 0.
    Shifted { order: usize },
}

impl DictionaryFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DictionaryFamily::Hyperbolic { alpha } if !(alpha > -1.0) => {
                domain("hyperbolic dictionary needs alpha > -1")
            }
            DictionaryFamily::Spherical { degree: 0 } => domain("spherical dictionary needs N >= 1"),
            _ => Ok(()),
        }
    }

    pub fn natural_domain(&self) -> Domain {
        match self {
            DictionaryFamily::Weyl { .. } => Domain::Plane,
            DictionaryFamily::Hyperbolic { .. } | DictionaryFamily::Shifted { .. } => Domain::Disk,
            DictionaryFamily::Spherical { .. } => Domain::ExtendedPlane,
        }
    }

    /// First index with a nonzero Ψ_k; Ψ_k carries the power z^{k − first_index}.
    pub fn first_index(&self) -> usize {
        match *self {
            DictionaryFamily::Weyl { order } | DictionaryFamily::Shifted { order } => order,
            _ => 0,
        }
    }

    /// Number of nonzero dictionary elements, if finite.
    pub fn last_index(&self) -> Option<usize> {
        match *self {
            DictionaryFamily::Spherical { degree } => Some(degree),
            _ => None,
        }
    }

    /// log of the coefficient w_k in Ψ_k(z) = w_k z^{k−first}; None when Ψ_k ≡ 0.
    pub fn ln_weight(&self, k: usize) -> Option<f64> {
        if k < self.first_index() || self.last_index().is_some_and(|n| k > n) {
            return None;
        }
        Some(match *self {
            DictionaryFamily::Weyl { order } => 0.5 * ln_factorial(k) - ln_factorial(k - order),
            DictionaryFamily::Hyperbolic { alpha } => {
                0.5 * (ln_gamma(k as f64 + alpha + 1.0) - ln_factorial(k))
            }
            DictionaryFamily::Spherical { degree } => 0.5 * ln_binomial(degree, k),
            DictionaryFamily::Shifted { .. } => 0.0,
        })
    }

    /// w_{k+1}/w_k for k ≥ first_index.
    pub fn ratio(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            DictionaryFamily::Weyl { order } => (kf + 1.0).sqrt() / (kf + 1.0 - order as f64),
            DictionaryFamily::Hyperbolic { alpha } => ((kf + alpha + 1.0) / (kf + 1.0)).sqrt(),
            DictionaryFamily::Spherical { degree } => {
                if k >= degree {
                    0.0
                } else {
                    ((degree as f64 - kf) / (kf + 1.0)).sqrt()
                }
            }
            DictionaryFamily::Shifted { .. } => 1.0,
        }
    }
}

/// Ψ_k(z).
pub fn psi(dict: DictionaryFamily, k: usize, z: Complex64) -> Complex64 {
    match dict.ln_weight(k) {
        None => Complex64::new(0.0, 0.0),
        Some(lw) => {
            let e = (k - dict.first_index()) as i32;
            z.powi(e) * lw.exp()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    DirectGafSample,
    TransformedNoise,
    UserSignal,
}

/// Σ_k c_k Ψ_k(z) over a dictionary family.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeries {
    pub family: DictionaryFamily,
    pub coeffs: Vec<Complex64>,
    pub domain: Domain,
    pub provenance: Provenance,
    /// Order of a zero at the origin present in every sample (not random).
    pub deterministic_zero_order: usize,
}

impl AnalyticSeries {
    pub fn new(family: DictionaryFamily, coeffs: Vec<Complex64>, domain: Domain, provenance: Provenance) -> Self {
        AnalyticSeries { family, coeffs, domain, provenance, deterministic_zero_order: 0 }
    }

    /// Plain power series a_j with F(z) = Σ a_j z^j.
    pub fn monomial_coeffs(&self) -> Vec<Complex64> {
        let k0 = self.family.first_index();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(k0));
        for (k, c) in self.coeffs.iter().enumerate().skip(k0) {
            match self.family.ln_weight(k) {
                Some(lw) => out.push(c * lw.exp()),
                None => break,
            }
        }
        out
    }

    /// The series divided by z^m, m = deterministic_zero_order, as plain monomials.
    pub fn deflated_monomials(&self) -> Vec<Complex64> {
        let a = self.monomial_coeffs();
        let m = self.deterministic_zero_order.min(a.len());
        a[m..].to_vec()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval_series(self, z)
    }
}

/// Σ c_k Ψ_k(z) by Horner's rule on the ratios w_{k+1}/w_k, so no factorial
/// is ever formed.
pub fn eval_series(s: &AnalyticSeries, z: Complex64) -> Complex64 {
    eval_series_with_derivative(s, z).0
}

/// (F(z), F'(z)) with the derivative taken term-wise.
pub fn eval_series_with_derivative(s: &AnalyticSeries, z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let k0 = s.family.first_index();
    let mut n = s.coeffs.len();
    if let Some(last) = s.family.last_index() {
        n = n.min(last + 1);
    }
    if n <= k0 {
        return (zero, zero);
    }
    let mut t = s.coeffs[n - 1];
    let mut dt = zero;
    for k in (k0..n - 1).rev() {
        let r = s.family.ratio(k);
        dt = (t + z * dt) * r;
        t = s.coeffs[k] + z * t * r;
    }
    let w0 = s.family.ln_weight(k0).unwrap().exp();
    (t * w0, dt * w0)
}

/// Σ |c_k| |Ψ_k(z)|, the natural scale for rounding errors in F(z).
pub fn abs_sum(s: &AnalyticSeries, z: Complex64) -> f64 {
    let r = z.norm();
    s.monomial_coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Values of the series at r e^{2πij/ntheta}, j = 0..ntheta, from one FFT of
/// the radius-scaled monomial coefficients.
pub fn eval_polar_fft(s: &AnalyticSeries, r: f64, ntheta: usize) -> Result<Vec<Complex64>> {
    let a = s.monomial_coeffs();
    if ntheta < a.len() || ntheta == 0 {
        return Err(Error::Aliasing { ntheta, len: a.len() });
    }
    if !(r >= 0.0) || (s.domain == Domain::Disk && r >= 1.0) {
        return domain(format!("radius {r} outside the series domain"));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); ntheta];
    let k0 = s.family.first_index();
    let lr = r.ln();
    for (j, slot) in buf.iter_mut().enumerate().take(a.len()) {
        let lw = s.family.ln_weight(k0 + j).unwrap();
        *slot = if r == 0.0 {
            if j == 0 {
                s.coeffs[k0] * lw.exp()
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else {
            s.coeffs[k0 + j] * (lw + j as f64 * lr).exp()
        };
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(ntheta, FftDirection::Inverse);
    fft.process(&mut buf);
    Ok(buf)
}
