//! Gauss–Hermite, Gauss–Laguerre and Gauss–Legendre rules.
//!
//! Nodes come from the symmetric Jacobi matrix (Golub–Welsch) and are then
//! polished by Newton steps on the normalised recurrence. Weights use the
//! Christoffel form 1/Σ p_j(x_i)², evaluated through the normalised functions
//! so that nothing overflows for a few hundred nodes.

use crate::error::{domain, Result};
use crate::orthopoly::{eval_basis_upto, BasisFamily};
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// weight e^{-x²} on R
    Hermite,
    /// weight x^alpha e^{-x} on R_+
    Laguerre { alpha: f64 },
    /// weight 1 on [-1, 1]
    Legendre,
}

/// An n-point Gauss rule: Σ w_i g(x_i) ≈ ∫ g(x) ω(x) dx.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn jacobi_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

impl GaussRule {
    pub fn hermite(n: usize) -> Result<GaussRule> {
        if n == 0 {
            return domain("a Gauss rule needs at least one node");
        }
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        let mut nodes = jacobi_eigenvalues(&diag, &off);
        let fam = BasisFamily::Hermite;
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                let v = eval_basis_upto(fam, n, *x)?;
                let d = (2.0 * n as f64).sqrt() * v[n - 1];
                if d != 0.0 {
                    *x -= v[n] / d;
                }
            }
        }
        let mut weights = Vec::with_capacity(n);
        for &x in &nodes {
            let v = eval_basis_upto(fam, n - 1, x)?;
            let s: f64 = v.iter().map(|f| f * f).sum();
            weights.push((-x * x).exp() / s);
        }
        Ok(GaussRule { kind: RuleKind::Hermite, nodes, weights })
    }

    pub fn laguerre(n: usize, alpha: f64) -> Result<GaussRule> {
        if n == 0 {
            return domain("a Gauss rule needs at least one node");
        }
        if !(alpha > -1.0) {
            return domain("Gauss–Laguerre needs alpha > -1");
        }
        let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0 + alpha).collect();
        let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
        let mut nodes = jacobi_eigenvalues(&diag, &off);
        let fam = BasisFamily::Laguerre { two_beta: alpha };
        let nf = n as f64;
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                let v = eval_basis_upto(fam, n, *x)?;
                let d = nf * v[n] - (nf * (nf + alpha)).sqrt() * v[n - 1];
                if d != 0.0 {
                    let nx = *x - *x * v[n] / d;
                    if nx > 0.0 {
                        *x = nx;
                    }
                }
            }
        }
        let mut weights = Vec::with_capacity(n);
        for &x in &nodes {
            let v = eval_basis_upto(fam, n - 1, x)?;
            let s: f64 = v.iter().map(|f| f * f).sum();
            weights.push((alpha * x.ln() - x - s.ln()).exp());
        }
        Ok(GaussRule { kind: RuleKind::Laguerre { alpha }, nodes, weights })
    }

    pub fn legendre(n: usize) -> Result<GaussRule> {
        if n == 0 {
            return domain("a Gauss rule needs at least one node");
        }
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n)
            .map(|k| {
                let k = k as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            })
            .collect();
        let mut nodes = jacobi_eigenvalues(&diag, &off);
        let nf = n as f64;
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                let (p, pm) = legendre_pair(n, *x);
                let dp = nf * (pm - *x * p) / (1.0 - *x * *x);
                *x -= p / dp;
            }
            let (p, pm) = legendre_pair(n, *x);
            let dp = nf * (pm - *x * p) / (1.0 - *x * *x);
            weights.push(2.0 / ((1.0 - *x * *x) * dp * dp));
        }
        Ok(GaussRule { kind: RuleKind::Legendre, nodes, weights })
    }

    /// Shared, lazily built rule.
    pub fn cached(kind: RuleKind, n: usize) -> Result<Arc<GaussRule>> {
        type Key = (u8, u64, usize);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<GaussRule>>>> = OnceLock::new();
        let key = match kind {
            RuleKind::Hermite => (0, 0, n),
            RuleKind::Laguerre { alpha } => (1, alpha.to_bits(), n),
            RuleKind::Legendre => (2, 0, n),
        };
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let rule = Arc::new(match kind {
            RuleKind::Hermite => GaussRule::hermite(n)?,
            RuleKind::Laguerre { alpha } => GaussRule::laguerre(n, alpha)?,
            RuleKind::Legendre => GaussRule::legendre(n)?,
        });
        cache.lock().unwrap().insert(key, rule.clone());
        Ok(rule)
    }

    /// Weights for integrating g(x) dx directly (the rule's weight function
    /// divided out), computed as 1/Σ f_j(x_i)² from the orthonormal functions
    /// of `family` so no e^{x²} factor is ever formed.
    pub fn plain_weights(&self, family: BasisFamily) -> Result<Vec<f64>> {
        let n = self.nodes.len();
        match (self.kind, family) {
            (RuleKind::Hermite, BasisFamily::Hermite) | (RuleKind::Laguerre { .. }, BasisFamily::Laguerre { .. }) => {
                self.nodes
                    .iter()
                    .map(|&x| {
                        let v = eval_basis_upto(family, n - 1, x)?;
                        Ok(1.0 / v.iter().map(|f| f * f).sum::<f64>())
                    })
                    .collect()
            }
            (RuleKind::Legendre, _) => Ok(self.weights.clone()),
            _ => domain("rule and basis family do not match"),
        }
    }

    /// Nodes and plain weights of the `n`-point rule matched to `family`
    /// (Hermite or Laguerre), shared across calls.
    pub fn plain_cached(family: BasisFamily, n: usize) -> Result<Arc<(Vec<f64>, Vec<f64>)>> {
        type Key = (u8, u64, usize);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
        let (key, kind) = match family {
            BasisFamily::Hermite => ((0, 0, n), RuleKind::Hermite),
            BasisFamily::Laguerre { two_beta } => ((1, two_beta.to_bits(), n), RuleKind::Laguerre { alpha: two_beta }),
            _ => return domain("plain rules exist for Hermite and Laguerre families only"),
        };
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let rule = GaussRule::cached(kind, n)?;
        let w = rule.plain_weights(family)?;
        let out = Arc::new((rule.nodes.clone(), w));
        cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Maps a Legendre rule to [a, b].
    pub fn on_interval(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        (
            self.nodes.iter().map(|x| m + h * x).collect(),
            self.weights.iter().map(|w| h * w).collect(),
        )
    }

    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * g(*x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ln_gamma;

    #[test]
    fn hermite_moments() {
        let r = GaussRule::hermite(20).unwrap();
        let pi = std::f64::consts::PI;
        assert!((r.integrate(|_| 1.0) - pi.sqrt()).abs() < 1e-14);
        assert!((r.integrate(|x| x * x) - pi.sqrt() / 2.0).abs() < 1e-14);
        assert!((r.integrate(|x| x.powi(10)) - 945.0 / 32.0 * pi.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn laguerre_moments() {
        let a = 0.7;
        let r = GaussRule::laguerre(30, a).unwrap();
        for m in 0..10 {
            let want = ln_gamma(a + 1.0 + m as f64).exp();
            let got = r.integrate(|x| x.powi(m));
            assert!(((got - want) / want).abs() < 1e-12, "{m}: {got} {want}");
        }
    }

    #[test]
    fn legendre_moments() {
        let r = GaussRule::legendre(12).unwrap();
        assert!((r.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-15);
        let (x, w) = r.on_interval(0.0, 2.0);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.exp()).sum();
        assert!((s - (2f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn large_rules_stay_finite() {
        let r = GaussRule::hermite(300).unwrap();
        assert!(r.nodes.iter().all(|x| x.is_finite()));
        let p = r.plain_weights(BasisFamily::Hermite).unwrap();
        assert!(p.iter().all(|w| w.is_finite() && *w > 0.0));
        let r = GaussRule::laguerre(200, 0.0).unwrap();
        assert!(r.nodes.iter().all(|x| *x > 0.0));
    }
}
