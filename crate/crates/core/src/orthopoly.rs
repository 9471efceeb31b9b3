//! Orthonormal function families (Hermite, Charlier, Laguerre, Meixner,
//! Krawtchouk, Fourier) and brute-force generating-function oracles.
//!
//! Every family is evaluated through a three-term recurrence on the
//! *normalised* polynomial part, with the weight carried separately in log
//! form. Raw polynomials and their factorial normalisers are never formed.
//! The three discrete families are self-dual, `f_k(x) = f_x(k)`, and the
//! recurrence is always run in the direction where the wanted solution is
//! dominant (degree ≤ argument).

use crate::error::{domain, Error, Result};
use crate::quadrature::GaussRule;
use crate::special::{ln_binomial, ln_factorial, ln_gamma, ln_pochhammer};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// The orthonormal families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisFamily {
    /// Hermite functions on R.
    Hermite,
    /// Charlier functions on N with Poisson parameter `a > 0`.
    Charlier { a: f64 },
    /// Spectral-side Laguerre functions on R_+ with parameter `two_beta > -1`.
    Laguerre { two_beta: f64 },
    /// Meixner functions on N, `alpha > -1`, `0 < c < 1`.
    Meixner { alpha: f64, c: f64 },
    /// Krawtchouk functions on {0..n}, `0 < p < 1`.
    Krawtchouk { n: usize, p: f64 },
    /// Fourier basis e^{ikθ}/√(2π) on [0, 2π); complex valued.
    Fourier,
}

impl BasisFamily {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            BasisFamily::Hermite | BasisFamily::Fourier => true,
            BasisFamily::Charlier { a } => a.is_finite() && a > 0.0,
            BasisFamily::Laguerre { two_beta } => two_beta.is_finite() && two_beta > -1.0,
            BasisFamily::Meixner { alpha, c } => {
                alpha.is_finite() && alpha > -1.0 && c > 0.0 && c < 1.0
            }
            BasisFamily::Krawtchouk { p, .. } => p > 0.0 && p < 1.0,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("basis parameters out of range: {self:?}"))
        }
    }

    /// Families whose support is a subset of N.
    pub fn is_discrete(&self) -> bool {
        matches!(
            self,
            BasisFamily::Charlier { .. } | BasisFamily::Meixner { .. } | BasisFamily::Krawtchouk { .. }
        )
    }

    /// Largest admissible index, for finite families.
    pub fn max_index(&self) -> Option<usize> {
        match *self {
            BasisFamily::Krawtchouk { n, .. } => Some(n),
            _ => None,
        }
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return domain("evaluation point must be finite");
        }
        match *self {
            BasisFamily::Laguerre { .. } if x < 0.0 => domain("Laguerre functions live on x >= 0"),
            BasisFamily::Krawtchouk { n, .. } if x > n as f64 => {
                domain(format!("Krawtchouk point {x} exceeds N = {n}"))
            }
            f if f.is_discrete() && (x < 0.0 || x.fract() != 0.0) => {
                domain(format!("discrete family needs a nonnegative integer point, got {x}"))
            }
            _ => Ok(()),
        }
    }

    fn check_index(&self, k: usize) -> Result<()> {
        match self.max_index() {
            Some(n) if k > n => domain(format!("index {k} exceeds N = {n}")),
            _ => Ok(()),
        }
    }

    /// log of the weight factor multiplying the normalised polynomial at `y`.
    fn log_weight(&self, y: f64) -> Result<f64> {
        Ok(match *self {
            BasisFamily::Hermite => -0.5 * y * y - 0.25 * PI.ln(),
            BasisFamily::Charlier { a } => -0.5 * a + 0.5 * (y * a.ln() - ln_gamma(y + 1.0)),
            BasisFamily::Laguerre { two_beta } => {
                let beta = 0.5 * two_beta;
                let power = if y == 0.0 {
                    if beta == 0.0 {
                        0.0
                    } else if beta > 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        return Err(Error::Numeric(
                            "Laguerre function with negative parameter is singular at 0".into(),
                        ));
                    }
                } else {
                    beta * y.ln()
                };
                power - 0.5 * y - 0.5 * ln_gamma(two_beta + 1.0)
            }
            BasisFamily::Meixner { alpha, c } => {
                let b = alpha + 1.0;
                0.5 * b * (1.0 - c).ln()
                    + 0.5 * (ln_gamma(b + y) - ln_gamma(b) + y * c.ln() - ln_gamma(y + 1.0))
            }
            BasisFamily::Krawtchouk { n, p } => {
                let yi = y as usize;
                0.5 * (ln_binomial(n, yi) + y * p.ln() + (n as f64 - y) * (1.0 - p).ln())
            }
            BasisFamily::Fourier => unreachable!("Fourier basis has no real recurrence"),
        })
    }

    /// Recurrence coefficients (a_k, b_k) in g_{k+1} = a_k g_k - b_k g_{k-1} at argument `y`.
    fn coefficients(&self, k: usize, y: f64) -> (f64, f64) {
        let kf = k as f64;
        match *self {
            BasisFamily::Hermite => (y * (2.0 / (kf + 1.0)).sqrt(), (kf / (kf + 1.0)).sqrt()),
            BasisFamily::Charlier { a } => {
                ((kf + a - y) / (a * (kf + 1.0)).sqrt(), (kf / (kf + 1.0)).sqrt())
            }
            BasisFamily::Laguerre { two_beta: al } => {
                let d = ((kf + 1.0) * (kf + al + 1.0)).sqrt();
                ((2.0 * kf + 1.0 + al - y) / d, (kf * (kf + al)).sqrt() / d)
            }
            BasisFamily::Meixner { alpha, c } => {
                let b = alpha + 1.0;
                let an = (c - 1.0) * y + kf + (kf + b) * c;
                (
                    an / (c * (kf + b) * (kf + 1.0)).sqrt(),
                    (kf * (kf + b - 1.0) / ((kf + 1.0) * (kf + b))).sqrt(),
                )
            }
            BasisFamily::Krawtchouk { n, p } => {
                let nf = n as f64;
                let bk = p * (nf - kf) + kf * (1.0 - p) - y;
                (
                    bk / (p * (1.0 - p) * (nf - kf) * (kf + 1.0)).sqrt(),
                    (kf * (nf - kf + 1.0) / ((kf + 1.0) * (nf - kf))).sqrt(),
                )
            }
            BasisFamily::Fourier => unreachable!(),
        }
    }

    /// f_0..f_kmax at argument `y` by forward recurrence.
    fn forward(&self, kmax: usize, y: f64) -> Result<Vec<f64>> {
        const BIG: f64 = 1e150;
        const SMALL: f64 = 1e-150;
        let lw = self.log_weight(y)?;
        let mut out = Vec::with_capacity(kmax + 1);
        let (mut prev, mut cur) = (0.0f64, 1.0f64);
        let mut ls = lw;
        out.push(scaled(cur, ls));
        for k in 0..kmax {
            let (a, b) = self.coefficients(k, y);
            let next = a * cur - b * prev;
            prev = cur;
            cur = next;
            let m = cur.abs().max(prev.abs());
            if m > BIG {
                prev /= BIG;
                cur /= BIG;
                ls += BIG.ln();
            } else if m < SMALL && m > 0.0 {
                prev /= SMALL;
                cur /= SMALL;
                ls += SMALL.ln();
            }
            out.push(scaled(cur, ls));
        }
        if let Some(bad) = out.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!(
                "{self:?}: f_{bad}({y}) left the representable range"
            )));
        }
        Ok(out)
    }
}

fn scaled(g: f64, log_scale: f64) -> f64 {
    if g == 0.0 || log_scale == f64::NEG_INFINITY {
        0.0
    } else {
        g.signum() * (g.abs().ln() + log_scale).exp()
    }
}

/// The Fourier basis function e^{ikθ}/√(2π).
pub fn fourier_function(k: i64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), k as f64 * theta)
}

/// Orthonormal basis function f_k(x). For Laguerre this is the spectral-side
/// function \hat f_k on R_+.
pub fn eval_basis(family: BasisFamily, k: usize, x: f64) -> Result<f64> {
    family.validate()?;
    family.check_index(k)?;
    family.check_point(x)?;
    match family {
        BasisFamily::Fourier => domain("Fourier basis is complex valued; use fourier_function"),
        f if f.is_discrete() => {
            let xi = x as usize;
            let (deg, arg) = if k <= xi { (k, xi) } else { (xi, k) };
            Ok(*f.forward(deg, arg as f64)?.last().unwrap())
        }
        f => Ok(*f.forward(k, x)?.last().unwrap()),
    }
}

/// f_0(x), ..., f_kmax(x) in one pass.
pub fn eval_basis_upto(family: BasisFamily, kmax: usize, x: f64) -> Result<Vec<f64>> {
    family.validate()?;
    family.check_index(kmax)?;
    family.check_point(x)?;
    match family {
        BasisFamily::Fourier => domain("Fourier basis is complex valued; use fourier_function"),
        f if f.is_discrete() => {
            let xi = x as usize;
            let mut out = f.forward(kmax.min(xi), x)?;
            for k in xi + 1..=kmax {
                out.push(*f.forward(xi, k as f64)?.last().unwrap());
            }
            Ok(out)
        }
        f => f.forward(kmax, x),
    }
}

/// Gram matrix together with how it was obtained.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub entries: DMatrix<f64>,
    /// Quadrature nodes or summation points used.
    pub support: usize,
    /// Bound on the neglected part of a truncated infinite sum (0 when exact).
    pub tail_bound: f64,
}

impl GramMatrix {
    pub fn deviation_from_identity(&self) -> f64 {
        let n = self.entries.nrows();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                m = m.max((self.entries[(i, j)] - target).abs());
            }
        }
        m
    }
}

fn accumulate(g: &mut DMatrix<f64>, v: &[f64], w: f64) {
    let n = g.nrows();
    for i in 0..n {
        let wi = w * v[i];
        for j in i..n {
            g[(i, j)] += wi * v[j];
        }
    }
}

fn symmetrize(g: &mut DMatrix<f64>) {
    let n = g.nrows();
    for i in 0..n {
        for j in 0..i {
            g[(i, j)] = g[(j, i)];
        }
    }
}

fn quadrature_gram(family: BasisFamily, kmax: usize, nodes: usize) -> Result<DMatrix<f64>> {
    let rule = match family {
        BasisFamily::Hermite => GaussRule::hermite(nodes)?,
        BasisFamily::Laguerre { two_beta } => GaussRule::laguerre(nodes, two_beta)?,
        _ => unreachable!(),
    };
    let plain = rule.plain_weights(family)?;
    let mut g = DMatrix::zeros(kmax + 1, kmax + 1);
    for (x, w) in rule.nodes.iter().zip(&plain) {
        let v = eval_basis_upto(family, kmax, *x)?;
        accumulate(&mut g, &v, *w);
    }
    symmetrize(&mut g);
    Ok(g)
}

/// Inner products ⟨f_j, f_k⟩ for j, k ≤ kmax.
///
/// Discrete families are summed exactly (Krawtchouk) or until the envelope
/// max_k f_k(x)² stays below 1e-18 for 10 consecutive points (Charlier,
/// Meixner). Continuous families use Gauss rules with `2 kmax + 8` nodes,
/// cross-checked against twice as many nodes.
pub fn gram_matrix(family: BasisFamily, kmax: usize) -> Result<GramMatrix> {
    family.validate()?;
    family.check_index(kmax)?;
    let n = kmax + 1;
    match family {
        BasisFamily::Hermite | BasisFamily::Laguerre { .. } => {
            let nodes = 2 * kmax + 8;
            let g = quadrature_gram(family, kmax, nodes)?;
            let g2 = quadrature_gram(family, kmax, 2 * nodes)?;
            let change = (&g - &g2).amax();
            if change > 1e-10 {
                return Err(Error::Accuracy(format!(
                    "Gram entries moved by {change:e} when doubling nodes"
                )));
            }
            Ok(GramMatrix { entries: g, support: nodes, tail_bound: 0.0 })
        }
        BasisFamily::Krawtchouk { n: big_n, .. } => {
            let mut g = DMatrix::zeros(n, n);
            for x in 0..=big_n {
                let v = eval_basis_upto(family, kmax, x as f64)?;
                accumulate(&mut g, &v, 1.0);
            }
            symmetrize(&mut g);
            Ok(GramMatrix { entries: g, support: big_n + 1, tail_bound: 0.0 })
        }
        BasisFamily::Charlier { .. } | BasisFamily::Meixner { .. } => {
            let mode = match family {
                BasisFamily::Charlier { a } => a,
                BasisFamily::Meixner { alpha, c } => (alpha + 1.0) * c / (1.0 - c),
                _ => unreachable!(),
            };
            let mut g = DMatrix::zeros(n, n);
            let mut quiet = 0usize;
            let mut last_env = f64::INFINITY;
            let mut ratio = 1.0f64;
            let mut x = 0usize;
            loop {
                let v = eval_basis_upto(family, kmax, x as f64)?;
                accumulate(&mut g, &v, 1.0);
                let env = v.iter().fold(0.0f64, |m, f| m.max(f * f));
                if x > 0 && last_env > 0.0 {
                    ratio = env / last_env;
                }
                last_env = env;
                if (x as f64) > mode && x > kmax && env < 1e-18 {
                    quiet += 1;
                } else {
                    quiet = 0;
                }
                if quiet >= 10 && ratio < 1.0 {
                    break;
                }
                x += 1;
                if x > 10_000_000 {
                    return Err(Error::Accuracy("discrete Gram sum did not settle".into()));
                }
            }
            symmetrize(&mut g);
            let tail = (kmax + 1) as f64 * last_env * ratio / (1.0 - ratio);
            Ok(GramMatrix { entries: g, support: x + 1, tail_bound: tail })
        }
        BasisFamily::Fourier => {
            // Trapezoidal rule on M > 2 kmax points is exact for e^{i(k-j)θ}.
            let m = 2 * kmax + 2;
            let mut g = DMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    let mut s = Complex64::new(0.0, 0.0);
                    for t in 0..m {
                        let th = 2.0 * PI * t as f64 / m as f64;
                        s += fourier_function(j as i64, th).conj() * fourier_function(k as i64, th);
                    }
                    g[(j, k)] = (s * (2.0 * PI / m as f64)).re;
                }
            }
            Ok(GramMatrix { entries: g, support: m, tail_bound: 0.0 })
        }
    }
}

/// Brute-force partial sum of a generating series beside its closed form.
#[derive(Debug, Clone, Copy)]
pub struct GeneratingCheck {
    pub partial_sum: Complex64,
    pub closed_form: Complex64,
    /// Ratio-test estimate of the neglected tail (infinite when the ratio test fails).
    pub tail_estimate: f64,
}

impl GeneratingCheck {
    pub fn residual(&self) -> f64 {
        (self.partial_sum - self.closed_form).norm()
    }

    pub fn relative_residual(&self) -> f64 {
        self.residual() / (1.0 + self.closed_form.norm())
    }
}

/// Compares the generating series of `family` at (x, z), summed to `kterms`
/// terms from the basis values, with its closed form:
///
/// | family | series | closed form |
/// |---|---|---|
/// | Hermite | Σ H_k(x) z^k/k! | e^{2xz−z²} |
/// | Charlier | Σ C_k(x) z^k/k! | (1−z/a)^x e^z |
/// | Laguerre | Σ L_k(x) z^k | (1−z)^{−2β−1} e^{−xz/(1−z)} |
/// | Meixner | Σ Γ(k+α+1)/k! M_k(x) z^k | Γ(α+1)(1−z/c)^x (1−z)^{−x−α−1} |
/// | Krawtchouk | Σ C(N,k) K_k(x) z^k | (1−q²z)^x (1+z)^{N−x} |
/// | Fourier | Σ_{k≥0} e^{ikθ} z^k | 1/(1−z e^{iθ}) |
pub fn generating_check(
    family: BasisFamily,
    x: f64,
    z: Complex64,
    kterms: usize,
) -> Result<GeneratingCheck> {
    family.validate()?;
    let needs_disk = matches!(
        family,
        BasisFamily::Laguerre { .. } | BasisFamily::Meixner { .. } | BasisFamily::Fourier
    );
    if needs_disk && z.norm() >= 1.0 {
        return domain(format!("generating series of {family:?} needs |z| < 1"));
    }
    if let BasisFamily::Fourier = family {
        let mut s = Complex64::new(0.0, 0.0);
        let e = Complex64::from_polar(1.0, x);
        let mut t = Complex64::new(1.0, 0.0);
        for _ in 0..kterms {
            s += t;
            t *= e * z;
        }
        let r = z.norm();
        return Ok(GeneratingCheck {
            partial_sum: s,
            closed_form: 1.0 / (1.0 - z * e),
            tail_estimate: r.powi(kterms as i32) / (1.0 - r),
        });
    }
    family.check_point(x)?;
    if let BasisFamily::Laguerre { two_beta } = family {
        if x == 0.0 && two_beta != 0.0 {
            return domain("Laguerre generating check needs x > 0 unless the parameter is 0");
        }
    }
    let kmax = match family.max_index() {
        Some(n) => kterms.min(n + 1).saturating_sub(1),
        None => kterms.saturating_sub(1),
    };
    let vals = eval_basis_upto(family, kmax, x)?;
    let lw = family.log_weight(x)?;
    let one = Complex64::new(1.0, 0.0);
    let closed = match family {
        BasisFamily::Hermite => (2.0 * x * z - z * z).exp(),
        BasisFamily::Charlier { a } => (one - z / a).powi(x as i32) * z.exp(),
        BasisFamily::Laguerre { two_beta } => {
            crate::special::cpow(one - z, -(two_beta + 1.0)) * (-x * z / (one - z)).exp()
        }
        BasisFamily::Meixner { alpha, c } => {
            ln_gamma(alpha + 1.0).exp()
                * (one - z / c).powi(x as i32)
                * crate::special::cpow(one - z, -x - alpha - 1.0)
        }
        BasisFamily::Krawtchouk { n, p } => {
            let q2 = (1.0 - p) / p;
            (one - q2 * z).powi(x as i32) * (one + z).powi(n as i32 - x as i32)
        }
        BasisFamily::Fourier => unreachable!(),
    };
    let lnz = if z.norm() > 0.0 { Some(z.ln()) } else { None };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mags = Vec::with_capacity(vals.len());
    for (k, f) in vals.iter().enumerate() {
        let kf = k as f64;
        let log_coef = match family {
            BasisFamily::Hermite => {
                0.25 * PI.ln() + 0.5 * x * x + 0.5 * (kf * 2f64.ln() - ln_factorial(k))
            }
            BasisFamily::Charlier { a } => -lw - 0.5 * kf * a.ln() - 0.5 * ln_factorial(k),
            BasisFamily::Laguerre { two_beta } => {
                -lw + 0.5 * (ln_gamma(kf + two_beta + 1.0) - ln_factorial(k) - ln_gamma(two_beta + 1.0))
            }
            BasisFamily::Meixner { alpha, c } => {
                ln_gamma(alpha + 1.0) - lw + 0.5 * (ln_pochhammer(alpha + 1.0, k) - ln_factorial(k))
                    - 0.5 * kf * c.ln()
            }
            BasisFamily::Krawtchouk { n, p } => {
                let q = ((1.0 - p) / p).sqrt();
                -lw + 0.5 * ln_binomial(n, k) + kf * q.ln()
            }
            BasisFamily::Fourier => unreachable!(),
        };
        let term = match lnz {
            Some(l) => (l * kf + log_coef).exp() * *f,
            None if k == 0 => Complex64::new(log_coef.exp() * f, 0.0),
            None => Complex64::new(0.0, 0.0),
        };
        mags.push(term.norm());
        sum += term;
    }
    let tail_estimate = if family.max_index().is_some_and(|n| kmax >= n) || z.norm() == 0.0 {
        0.0
    } else {
        tail_from_ratios(&mags)
    };
    Ok(GeneratingCheck { partial_sum: sum, closed_form: closed, tail_estimate })
}

/// Geometric tail estimate from the decay of the block envelope of the last
/// terms; robust to sign oscillation of the individual terms.
fn tail_from_ratios(mags: &[f64]) -> f64 {
    const W: usize = 8;
    let n = mags.len();
    if n < 2 * W {
        return f64::INFINITY;
    }
    let m1 = mags[n - 2 * W..n - W].iter().fold(0.0f64, |a, b| a.max(*b));
    let m2 = mags[n - W..].iter().fold(0.0f64, |a, b| a.max(*b));
    if m2 == 0.0 {
        return 0.0;
    }
    let r = (m2 / m1).powf(1.0 / W as f64);
    if r < 1.0 {
        m2 / (1.0 - r)
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        let h00 = eval_basis(BasisFamily::Hermite, 0, 0.0).unwrap();
        assert!((h00 - 0.7511255444649425).abs() < 1e-15);
        assert!(eval_basis(BasisFamily::Hermite, 1, 0.0).unwrap().abs() < 1e-300);
        let c = eval_basis(BasisFamily::Charlier { a: 1.0 }, 0, 0.0).unwrap();
        assert!((c - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(
            eval_basis(BasisFamily::Charlier { a: -1.0 }, 0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(eval_basis(BasisFamily::Krawtchouk { n: 3, p: 0.5 }, 4, 0.0).is_err());
        assert!(eval_basis(BasisFamily::Charlier { a: 1.0 }, 0, 1.5).is_err());
        assert!(eval_basis(BasisFamily::Meixner { alpha: 0.0, c: 1.0 }, 0, 0.0).is_err());
    }

    #[test]
    fn hermite_matches_explicit_low_orders() {
        // f_2(x) = (2x²−1) e^{−x²/2} / (√2 π^{1/4})
        for &x in &[-1.3, 0.2, 2.7] {
            let want = (2.0 * x * x - 1.0) * (-0.5 * x * x as f64).exp() / (2f64.sqrt() * PI.powf(0.25));
            assert!((eval_basis(BasisFamily::Hermite, 2, x).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn hermite_large_order_bounded() {
        for &x in &[0.0, 3.3, -12.5, 20.0] {
            let v = eval_basis_upto(BasisFamily::Hermite, 2000, x).unwrap();
            assert!(v.iter().all(|f| f.is_finite() && f.abs() <= 1.1));
        }
        // far outside the classical region the values underflow gracefully
        let v = eval_basis(BasisFamily::Hermite, 50, 60.0).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn discrete_families_are_self_dual() {
        let fams = [
            BasisFamily::Charlier { a: 3.0 },
            BasisFamily::Meixner { alpha: 0.7, c: 0.4 },
            BasisFamily::Krawtchouk { n: 12, p: 0.3 },
        ];
        for f in fams {
            for k in 0..12usize {
                for x in 0..12usize {
                    let a = eval_basis(f, k, x as f64).unwrap();
                    let b = eval_basis(f, x, k as f64).unwrap();
                    assert!((a - b).abs() < 1e-14, "{f:?} {k} {x}");
                }
            }
        }
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(BasisFamily::Krawtchouk { n: 8, p: 0.5 }, 8).unwrap();
        assert!(g.deviation_from_identity() < 1e-12);
        let g = gram_matrix(BasisFamily::Charlier { a: 5.0 }, 20).unwrap();
        assert!(g.deviation_from_identity() < 1e-10);
        let g = gram_matrix(BasisFamily::Hermite, 0).unwrap();
        assert!((g.entries[(0, 0)] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gram_all_families() {
        let fams = [
            (BasisFamily::Hermite, 1e-7),
            (BasisFamily::Laguerre { two_beta: 0.0 }, 1e-7),
            (BasisFamily::Laguerre { two_beta: 1.4 }, 1e-7),
            (BasisFamily::Meixner { alpha: 0.5, c: 0.6 }, 1e-9),
            (BasisFamily::Charlier { a: 1.5 }, 1e-9),
            (BasisFamily::Krawtchouk { n: 30, p: 0.35 }, 1e-9),
            (BasisFamily::Fourier, 1e-12),
        ];
        for (f, tol) in fams {
            let g = gram_matrix(f, 30).unwrap();
            assert!(g.deviation_from_identity() < tol, "{f:?}: {}", g.deviation_from_identity());
        }
    }

    #[test]
    fn generating_examples() {
        let g = generating_check(BasisFamily::Charlier { a: 2.0 }, 0.0, Complex64::new(0.3, 0.0), 40)
            .unwrap();
        assert!((g.closed_form.re - 1.3498588075760032).abs() < 1e-12);
        assert!(g.residual() < 1e-12);
        let g = generating_check(BasisFamily::Hermite, 1.0, Complex64::new(0.2, 0.0), 40).unwrap();
        assert!((g.closed_form.re - 0.36f64.exp()).abs() < 1e-14);
        assert!(g.residual() < 1e-12);
        let g = generating_check(BasisFamily::Krawtchouk { n: 3, p: 0.5 }, 0.0, Complex64::new(1.0, 0.0), 10)
            .unwrap();
        assert!((g.closed_form.re - 8.0).abs() < 1e-14 && g.residual() < 1e-12);
        assert!(generating_check(BasisFamily::Laguerre { two_beta: 0.0 }, 1.0, Complex64::new(1.0, 0.0), 10)
            .is_err());
    }

    proptest! {
        #[test]
        fn hermite_parity(k in 0usize..200, x in -15.0f64..15.0) {
            let a = eval_basis(BasisFamily::Hermite, k, x).unwrap();
            let b = eval_basis(BasisFamily::Hermite, k, -x).unwrap();
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - s * b).abs() <= 1e-13 * (1.0 + a.abs()));
        }

        #[test]
        fn generating_identities(x in 0u32..15, r in 0.0f64..0.6, th in 0.0f64..std::f64::consts::TAU) {
            // beyond |z| = 0.6 the Meixner series cancels by up to 1e6 at x ~ 10
            let z = Complex64::from_polar(r, th);
            let fams = [
                BasisFamily::Hermite,
                BasisFamily::Charlier { a: 2.5 },
                BasisFamily::Laguerre { two_beta: 0.6 },
                BasisFamily::Meixner { alpha: 1.2, c: 0.5 },
                BasisFamily::Krawtchouk { n: 20, p: 0.4 },
            ];
            for f in fams {
                let xx = if matches!(f, BasisFamily::Hermite) { x as f64 / 5.0 - 1.5 } else { x as f64 + 0.0 };
                let xx = if matches!(f, BasisFamily::Laguerre { .. }) { xx + 0.25 } else { xx };
                let g = generating_check(f, xx, z, 400).unwrap();
                prop_assert!(g.tail_estimate < 1e-12, "{:?} tail {}", f, g.tail_estimate);
                prop_assert!(g.relative_residual() < 1e-10, "{:?} x={} z={} {:?}", f, xx, z, g);
            }
        }
    }
}
