//! Small special-function helpers shared by the numerical modules.

use num_complex::Complex64;
use std::sync::OnceLock;

/// log Γ(x) for x > 0.
///
/// Integer arguments up to 171 come from a table of logarithms of
/// floating-point factorials; other arguments are shifted above 20 and use
/// the Stirling series. Absolute error is a few ulps of the result.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x.fract() == 0.0 && x <= 171.0 {
        return ln_factorial_table()[x as usize - 1];
    }
    let mut y = x;
    let mut prod = 1.0f64;
    while y < 20.0 {
        prod *= y;
        y += 1.0;
    }
    stirling(y) - prod.ln()
}

fn stirling(y: f64) -> f64 {
    let r = 1.0 / y;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0
                    - r2 * (1.0 / 1680.0
                        - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))))));
    (y - 0.5) * (y.ln() - 1.0) - 0.5 + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

fn ln_factorial_table() -> &'static [f64; 171] {
    static TABLE: OnceLock<[f64; 171]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 171];
        let mut f = 1.0f64;
        for (k, slot) in t.iter_mut().enumerate().skip(1) {
            f *= k as f64;
            *slot = f.ln();
        }
        t
    })
}

pub fn ln_factorial(k: usize) -> f64 {
    if k <= 170 {
        ln_factorial_table()[k]
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}

/// log C(n, k); requires k <= n.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// log of the rising factorial (a)_k for a > 0.
pub fn ln_pochhammer(a: f64, k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        ln_gamma(a + k as f64) - ln_gamma(a)
    }
}

/// Principal-branch complex power `w^e` for real `e`, with `0^e = 0` for `e > 0`.
pub fn cpow(w: Complex64, e: f64) -> Complex64 {
    if e == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if w == Complex64::new(0.0, 0.0) {
        return if e > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    if e.fract() == 0.0 && e.abs() <= 64.0 {
        return w.powi(e as i32);
    }
    (w.ln() * e).exp()
}

/// Pairwise summation; keeps rounding error at O(log n) for long Monte Carlo sums.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}
