//! Truncated complex white noise, the Θ-norm, and the quantitative
//! truncation bounds (Wasserstein, concentration, Lipschitz transport).

use crate::error::{domain, Result};
use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Number of 32-bit ChaCha words consumed per coefficient.
const WORDS_PER_COEFF: u128 = 4;

/// ξ_0..ξ_n together with the key that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseVector {
    pub coeffs: Vec<Complex64>,
    pub seed: u64,
    pub stream: u64,
}

impl NoiseVector {
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn theta_norm_sq(&self, w: ThetaWeights) -> f64 {
        theta_norm_sq(&self.coeffs, w)
    }
}

/// Counter-based source of N_C(0,1) variables: coefficient `k` of stream
/// `stream` under `seed` is a pure function of the triple.
#[derive(Debug, Clone)]
pub struct NoiseStream {
    rng: ChaCha20Rng,
}

impl NoiseStream {
    pub fn new(seed: u64, stream: u64) -> NoiseStream {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        NoiseStream { rng }
    }

    /// Positions the stream so the next draw is coefficient `k`.
    pub fn seek(&mut self, k: u64) {
        self.rng.set_word_pos(k as u128 * WORDS_PER_COEFF);
    }

    /// Next coefficient, via Box–Muller with variance 1/2 per component.
    pub fn next_coeff(&mut self) -> Complex64 {
        let a = self.rng.next_u64();
        let b = self.rng.next_u64();
        // u1 in (0, 1], u2 in [0, 1)
        let u1 = ((a >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = (b >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let r = (-u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        Complex64::new(r * c, r * s)
    }

    pub fn take(&mut self, count: usize) -> Vec<Complex64> {
        (0..count).map(|_| self.next_coeff()).collect()
    }
}

/// ξ^(n) = (ξ_0, ..., ξ_n), i.i.d. N_C(0,1), deterministic in (seed, stream).
pub fn sample_noise(n: usize, seed: u64, stream: u64) -> NoiseVector {
    let mut s = NoiseStream::new(seed, stream);
    NoiseVector { coeffs: s.take(n + 1), seed, stream }
}

/// Index convention for the weights 1/(1+k²).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaWeights {
    /// entry i carries index k = i
    NaturalN,
    /// entry i carries the signed index k = first + i
    SignedZ { first: i64 },
}

impl ThetaWeights {
    pub fn weight(&self, i: usize) -> f64 {
        let k = match *self {
            ThetaWeights::NaturalN => i as f64,
            ThetaWeights::SignedZ { first } => (first + i as i64) as f64,
        };
        1.0 / (1.0 + k * k)
    }
}

/// Σ_k |v_k|²/(1+k²).
pub fn theta_norm_sq(v: &[Complex64], w: ThetaWeights) -> f64 {
    v.iter().enumerate().map(|(i, c)| w.weight(i) * c.norm_sqr()).sum()
}

/// The Wasserstein bound 1/√n with the exact Θ-tail beside it.
#[derive(Debug, Clone, Copy)]
pub struct WassersteinBound {
    pub n: usize,
    /// 1/√n
    pub bound: f64,
    /// Certified bracket on Σ_{k>n} 1/(1+k²).
    pub tail_lower: f64,
    pub tail_upper: f64,
}

impl WassersteinBound {
    pub fn tail(&self) -> f64 {
        0.5 * (self.tail_lower + self.tail_upper)
    }
}

/// Exact tail Σ_{k=n+1}^∞ 1/(1+k²): direct sum to L = 2n+4096 plus the
/// integral bracket [∫_{L+1}^∞, ∫_{L+1/2}^∞] (the upper end uses convexity).
pub fn theta_tail_bracket(n: usize) -> (f64, f64) {
    let l = 2 * n + 4096;
    let mut s = 0.0;
    for k in (n + 1..=l).rev() {
        let k = k as f64;
        s += 1.0 / (1.0 + k * k);
    }
    let lf = l as f64;
    (s + (1.0 / (lf + 1.0)).atan(), s + (1.0 / (lf + 0.5)).atan())
}

pub fn wasserstein2_bound(n: usize) -> Result<WassersteinBound> {
    if n == 0 {
        return domain("the Wasserstein bound needs n >= 1");
    }
    let (lo, hi) = theta_tail_bracket(n);
    Ok(WassersteinBound { n, bound: 1.0 / (n as f64).sqrt(), tail_lower: lo, tail_upper: hi })
}

/// min(1, 2 exp(−n ε²/2)).
pub fn concentration_bound(n: usize, eps: f64) -> f64 {
    if eps <= 0.0 || n == 0 {
        return 1.0;
    }
    (2.0 * (-(n as f64) * eps * eps / 2.0).exp()).min(1.0)
}

/// Lip(F)/√n, the bound on |E F(ξ^(n)) − E F(ξ)|.
pub fn lipschitz_bound(lip: f64, n: usize) -> f64 {
    if lip == 0.0 {
        return 0.0;
    }
    lip / (n as f64).sqrt()
}

/// Per-trial split of ‖ξ^(m)‖²_Θ into the head k ≤ n and the tail n < k ≤ m.
#[derive(Debug, Clone, Copy)]
pub struct ThetaSplit {
    pub head_sq: f64,
    pub tail_sq: f64,
}

/// Draws `trials` independent noises (stream = trial index) and splits their
/// Θ-norm at n. Output order follows the trial index regardless of scheduling.
pub fn theta_splits(n: usize, m: usize, trials: usize, seed: u64) -> Result<Vec<ThetaSplit>> {
    if m <= n {
        return domain("the proxy truncation m must exceed n");
    }
    Ok((0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut s = NoiseStream::new(seed, t);
            let mut head = 0.0;
            let mut tail = 0.0;
            for k in 0..=m {
                let w = 1.0 / (1.0 + (k as f64) * (k as f64));
                let v = w * s.next_coeff().norm_sqr();
                if k <= n {
                    head += v;
                } else {
                    tail += v;
                }
            }
            ThetaSplit { head_sq: head, tail_sq: tail }
        })
        .collect())
}

/// Monte Carlo frequency of ‖ξ^(n) − ξ^(m)‖_Θ > ε against the concentration bound.
#[derive(Debug, Clone, Copy)]
pub struct ExceedanceReport {
    pub n: usize,
    pub m: usize,
    pub eps: f64,
    pub trials: usize,
    pub exceed: usize,
    pub frequency: f64,
    pub bound: f64,
    /// √(b(1−b)/trials) at the bound b (0 when the bound is vacuous).
    pub binomial_se: f64,
}

impl ExceedanceReport {
    pub fn within(&self, z: f64) -> bool {
        self.frequency <= self.bound + z * self.binomial_se
    }
}

pub fn exceedance_from_splits(splits: &[ThetaSplit], n: usize, m: usize, eps: f64) -> ExceedanceReport {
    let trials = splits.len();
    let exceed = splits.iter().filter(|s| s.tail_sq > eps * eps || eps <= 0.0).count();
    let bound = concentration_bound(n, eps);
    let tf = trials.max(1) as f64;
    ExceedanceReport {
        n,
        m,
        eps,
        trials,
        exceed,
        frequency: exceed as f64 / tf,
        bound,
        binomial_se: (bound * (1.0 - bound) / tf).sqrt(),
    }
}

pub fn empirical_tail_exceedance(
    n: usize,
    m: usize,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<ExceedanceReport> {
    if trials == 0 {
        return domain("need at least one trial");
    }
    let splits = theta_splits(n, m, trials, seed)?;
    Ok(exceedance_from_splits(&splits, n, m, eps))
}
