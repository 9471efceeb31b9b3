use super::series::DictionaryFamily;
use crate::error::{domain, Error, Result};
use crate::geometry::Window;

/// Sup over a window of Σ_k (1+k²)|Ψ_k(z)|² and of its tail beyond n.
#[derive(Debug, Clone, PartialEq)]
pub struct CkReport {
    pub window: Window,
    pub n: usize,
    /// Radius at which both sups are attained.
    pub radius: f64,
    pub ck: f64,
    pub tail: f64,
    /// Terms summed explicitly.
    pub terms: usize,
    /// Geometric upper bound for everything past the summed terms; already
    /// included in `ck` and `tail`.
    pub remainder: f64,
}

/// Explicit terms t_k = (1+k²)|Ψ_k(R)|², k = first..first+len, plus a bound
/// on the rest.
pub(crate) struct WeightedTerms {
    pub first: usize,
    pub terms: Vec<f64>,
    pub remainder: f64,
}

impl WeightedTerms {
    pub fn total(&self) -> f64 {
        self.terms.iter().sum::<f64>() + self.remainder
    }

    /// Σ_{k>n} t_k (remainder included).
    pub fn tail(&self, n: usize) -> f64 {
        let skip = (n + 1).saturating_sub(self.first);
        self.terms.iter().skip(skip).sum::<f64>() + self.remainder
    }
}

fn check_radius(dict: DictionaryFamily, r: f64) -> Result<()> {
    dict.validate()?;
    if !(r >= 0.0 && r.is_finite()) {
        return domain(format!("window radius {r} is not admissible"));
    }
    if matches!(dict, DictionaryFamily::Hyperbolic { .. } | DictionaryFamily::Shifted { .. }) && r >= 1.0 {
        return domain(format!("window of radius {r} touches the unit circle"));
    }
    Ok(())
}

/// Upper bound on t_{j+1}/t_j valid for every j ≥ k, or None if k is too
/// small for the bound to be monotone.
fn ratio_bound(dict: DictionaryFamily, k: usize, r2: f64) -> Option<f64> {
    if k == 0 {
        return None;
    }
    let kf = k as f64;
    let poly = (1.0 + (kf + 1.0) * (kf + 1.0)) / (1.0 + kf * kf);
    let g = match dict {
        DictionaryFamily::Weyl { order } => {
            if k < order.max(1) {
                return None;
            }
            let d = kf + 1.0 - order as f64;
            (kf + 1.0) / (d * d)
        }
        DictionaryFamily::Hyperbolic { alpha } => ((kf + alpha + 1.0) / (kf + 1.0)).max(1.0),
        DictionaryFamily::Shifted { .. } => 1.0,
        DictionaryFamily::Spherical { .. } => return Some(0.0),
    };
    Some(r2 * poly * g)
}

/// Sums the weighted terms at radius r until at least index `need` and until
/// the geometric remainder is below `rel` of the running sum.
pub(crate) fn weighted_terms(dict: DictionaryFamily, r: f64, need: usize, rel: f64) -> Result<WeightedTerms> {
    check_radius(dict, r)?;
    let first = dict.first_index();
    let mut terms = Vec::new();
    let lr = r.ln();
    let mut sum = 0.0;
    let mut k = first;
    loop {
        let lw = match dict.ln_weight(k) {
            Some(v) => v,
            None => return Ok(WeightedTerms { first, terms, remainder: 0.0 }),
        };
        let e = (k - first) as f64;
        let t = if r == 0.0 {
            if k == first {
                (1.0 + (k * k) as f64) * (2.0 * lw).exp()
            } else {
                0.0
            }
        } else {
            ((1.0 + (k as f64).powi(2)).ln() + 2.0 * lw + 2.0 * e * lr).exp()
        };
        if !t.is_finite() {
            return Err(Error::Numeric(format!("weighted dictionary term {k} overflows at radius {r}")));
        }
        terms.push(t);
        sum += t;
        if r == 0.0 && k >= need {
            return Ok(WeightedTerms { first, terms, remainder: 0.0 });
        }
        if k >= need {
            if let Some(rho) = ratio_bound(dict, k, r * r) {
                if rho < 1.0 {
                    let rem = t * rho / (1.0 - rho);
                    if rem <= rel * sum {
                        return Ok(WeightedTerms { first, terms, remainder: rem });
                    }
                }
            }
        }
        if terms.len() > 5_000_000 {
            return Err(Error::Numeric("dictionary tail did not close".into()));
        }
        k += 1;
    }
}

/// C_K and the truncation tail over a window. Both sups sit at the largest
/// modulus of the window since every term grows with |z|.
pub fn ck_and_tail(dict: DictionaryFamily, window: &Window, n: usize) -> Result<CkReport> {
    let radius = window.max_radius();
    let w = weighted_terms(dict, radius, n + 1, 1e-17)?;
    Ok(CkReport {
        window: *window,
        n,
        radius,
        ck: w.total(),
        tail: w.tail(n),
        terms: w.terms.len(),
        remainder: w.remainder,
    })
}

/// Smallest n with sup_window Σ_{k>n} (1+k²)|Ψ_k|² ≤ level.
pub fn min_truncation(dict: DictionaryFamily, window: &Window, level: f64) -> Result<usize> {
    if !(level > 0.0) {
        return domain("tail level must be positive");
    }
    let radius = window.max_radius();
    let w = weighted_terms(dict, radius, 0, 1e-17)?;
    let rel = (1e-3 * level / w.total().max(1e-300)).min(1e-17);
    let w = weighted_terms(dict, radius, 0, rel)?;
    let mut suffix = w.remainder;
    let mut best = w.first + w.terms.len();
    for (i, t) in w.terms.iter().enumerate().rev() {
        // suffix = Σ_{k > first+i} at this point
        if suffix <= level {
            best = w.first + i;
        } else {
            break;
        }
        suffix += t;
    }
    if suffix <= level {
        // the whole sum is below level
        return Ok(0);
    }
    Ok(best)
}

/// Tail check used before trusting a truncated series on a window.
pub fn require_tail(dict: DictionaryFamily, window: &Window, n: usize, level: f64) -> Result<CkReport> {
    let rep = ck_and_tail(dict, window, n)?;
    if rep.tail > level {
        let required = min_truncation(dict, window, level)?;
        return Err(Error::TailCondition { n, required });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let z = Window::centered_disk(1e-300).unwrap();
        let rep = ck_and_tail(DictionaryFamily::Weyl { order: 0 }, &z, 0).unwrap();
        assert!((rep.ck - 1.0).abs() < 1e-12 && rep.tail < 1e-12);
        let w = Window::centered_disk(5.0).unwrap();
        let rep = ck_and_tail(DictionaryFamily::Spherical { degree: 3 }, &w, 3).unwrap();
        assert_eq!(rep.tail, 0.0);
    }

    #[test]
    fn weyl_radius_two_matches_brute_force() {
        let w = Window::centered_disk(2.0).unwrap();
        let dict = DictionaryFamily::Weyl { order: 0 };
        // brute force Σ (1+k²) 4^k / k! with 200 terms
        let mut t = 1.0f64;
        let mut terms = vec![];
        for k in 0..200usize {
            if k > 0 {
                t *= 4.0 / k as f64;
            }
            terms.push((1.0 + (k * k) as f64) * t);
        }
        let total: f64 = terms.iter().sum();
        let rep = ck_and_tail(dict, &w, 10).unwrap();
        assert!((rep.ck - total).abs() < 1e-12 * total);
        let tail10: f64 = terms[11..].iter().sum();
        assert!((rep.tail - tail10).abs() < 1e-12 * total);
        let n = min_truncation(dict, &w, 1.0).unwrap();
        let tail_at = |n: usize| terms[n + 1..].iter().sum::<f64>();
        assert!(tail_at(n) <= 1.0 && tail_at(n - 1) > 1.0, "n = {n}");
    }

    #[test]
    fn tail_monotone_and_vanishing() {
        let w = Window::centered_disk(0.8).unwrap();
        for dict in [
            DictionaryFamily::Hyperbolic { alpha: 0.0 },
            DictionaryFamily::Hyperbolic { alpha: -0.5 },
            DictionaryFamily::Weyl { order: 2 },
            DictionaryFamily::Shifted { order: 1 },
        ] {
            let mut prev = f64::INFINITY;
            for n in [0usize, 5, 20, 80, 300] {
                let t = ck_and_tail(dict, &w, n).unwrap().tail;
                assert!(t <= prev);
                prev = t;
            }
            assert!(prev < 1e-10, "{dict:?}: {prev}");
        }
    }

    #[test]
    fn boundary_window_rejected() {
        let w = Window::centered_disk(1.0).unwrap();
        assert!(ck_and_tail(DictionaryFamily::Hyperbolic { alpha: 0.0 }, &w, 3).is_err());
        let e = require_tail(DictionaryFamily::Weyl { order: 0 }, &Window::square(2.0), 5, 1.0).unwrap_err();
        assert!(matches!(e, Error::TailCondition { n: 5, .. }));
    }
}
