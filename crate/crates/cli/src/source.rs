//! Parsing of `--model`/`--params` into a sampler: a GAF model sampled
//! directly, or a transform applied to truncated white noise (optionally
//! with one basis function hidden in it).

use noisegaf::gaf::{covariance, sample_gaf, GafModel};
use noisegaf::noise::sample_noise;
use noisegaf::stats::{checked_truncation, TAIL_LEVEL};
use noisegaf::transforms::{
    ck_and_tail, min_truncation, transform_noise, AnalyticSeries, Domain, TransformName, TransformSpec,
};
use noisegaf::{Complex64, Error, Result, Window};
use std::collections::BTreeMap;

pub const MODEL_NAMES: &str = "planar, planar-higher, hyperbolic, spherical, bargmann, charlier, bergman, \
meixner, krawtchouk, analytic-projection";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiddenSignal {
    pub k: usize,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Model(GafModel),
    Transform { spec: TransformSpec, signal: Option<HiddenSignal> },
}

/// `k=v` pairs from repeated or comma-separated `--params`.
pub fn parse_params(items: &[String]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("parameter '{item}' is not of the form key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

struct Params {
    map: BTreeMap<String, String>,
}

impl Params {
    fn take<T: std::str::FromStr>(&mut self, keys: &[&str], default: T) -> Result<T> {
        Ok(self.take_opt(keys)?.unwrap_or(default))
    }

    fn take_opt<T: std::str::FromStr>(&mut self, keys: &[&str]) -> Result<Option<T>> {
        let mut found = None;
        for k in keys {
            if let Some(v) = self.map.remove(*k) {
                if found.is_some() {
                    return Err(Error::Domain(format!("parameter '{}' given twice", keys[0])));
                }
                found = Some(v);
            }
        }
        match found {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| Error::Domain(format!("bad value '{v}' for parameter '{}'", keys[0]))),
        }
    }

    fn finish(self, model: &str) -> Result<()> {
        match self.map.keys().next() {
            None => Ok(()),
            Some(k) => Err(Error::Domain(format!("unknown parameter '{k}' for model '{model}'"))),
        }
    }
}

impl Source {
    pub fn parse(model: &str, params: &BTreeMap<String, String>) -> Result<Source> {
        let mut p = Params { map: params.clone() };
        let transform = |p: &mut Params, name: TransformName| -> Result<Source> {
            let spec = TransformSpec::new(name)?;
            let k = p.take_opt::<usize>(&["signal_k"])?;
            let amplitude: f64 = p.take(&["signal_amp"], 10.0)?;
            Ok(Source::Transform { spec, signal: k.map(|k| HiddenSignal { k, amplitude }) })
        };
        let src = match model {
            "planar" => Source::Model(GafModel::Planar { ell: p.take(&["ell"], 1.0)? }),
            "planar-higher" => Source::Model(GafModel::PlanarHigher { order: p.take(&["N", "order"], 1)? }),
            "hyperbolic" => Source::Model(GafModel::Hyperbolic { alpha: p.take(&["alpha"], 0.0)? }),
            "spherical" => Source::Model(GafModel::Spherical { degree: p.take(&["N", "degree"], 16)? }),
            "bargmann" => {
                let order = p.take(&["N", "order"], 0)?;
                transform(&mut p, TransformName::Bargmann { order })?
            }
            "charlier" => {
                let a = p.take(&["a"], 1.0)?;
                transform(&mut p, TransformName::CharlierStft { a })?
            }
            "bergman" => {
                let beta = p.take(&["beta"], 0.0)?;
                transform(&mut p, TransformName::BergmanDp { beta })?
            }
            "meixner" => {
                let alpha = p.take(&["alpha"], 0.0)?;
                let c = p.take(&["c"], 0.5)?;
                transform(&mut p, TransformName::MeixnerStft { alpha, c })?
            }
            "krawtchouk" => {
                let n = p.take(&["N", "n"], 16)?;
                let pp = p.take(&["p"], 0.5)?;
                transform(&mut p, TransformName::KrawtchoukStft { n, p: pp })?
            }
            "analytic-projection" => {
                let order = p.take(&["N", "order"], 0)?;
                transform(&mut p, TransformName::AnalyticProjection { order })?
            }
            other => return Err(Error::Domain(format!("unknown model '{other}'; expected one of {MODEL_NAMES}"))),
        };
        p.finish(model)?;
        if let Source::Model(m) = src {
            m.validate()?;
        }
        Ok(src)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Source::Model(m) => m.domain(),
            Source::Transform { spec, .. } => spec.domain(),
        }
    }

    pub fn default_window(&self) -> Window {
        match self.domain() {
            Domain::Disk => Window::centered_disk(0.9).expect("valid radius"),
            _ => Window::square(2.0),
        }
    }

    /// Checks the window against the domain and returns the truncation to
    /// use: the given one after a tail check, or the smallest adequate one.
    pub fn truncation(&self, window: &Window, given: Option<usize>) -> Result<usize> {
        let inside = match (self.domain(), window) {
            (Domain::Disk, Window::Disk { center, radius }) => center.norm() + radius < 1.0,
            (Domain::Disk, _) => {
                let (x0, x1, y0, y1) = window.bounding_rect();
                [(x0, y0), (x0, y1), (x1, y0), (x1, y1)].iter().all(|&(x, y)| x * x + y * y < 1.0)
            }
            _ => true,
        };
        if !inside {
            return Err(Error::Domain(format!("window {window} is not inside the domain of the model")));
        }
        match self {
            Source::Model(m) => checked_truncation(*m, window, given),
            Source::Transform { spec, .. } => {
                let required = match spec.dict.last_index() {
                    Some(last) => last,
                    None => min_truncation(spec.dict, window, TAIL_LEVEL)?,
                };
                match given {
                    None => Ok(required),
                    Some(n) if ck_and_tail(spec.dict, window, n)?.tail <= TAIL_LEVEL => Ok(n),
                    Some(n) => Err(Error::TailCondition { n, required }),
                }
            }
        }
    }

    /// Smallest truncation whose weighted tail over the window is ≤ level.
    pub fn min_truncation(&self, window: &Window, level: f64) -> Result<usize> {
        match self {
            Source::Model(m) => m.min_truncation(window, level),
            Source::Transform { spec, .. } => match spec.dict.last_index() {
                Some(last) => Ok(last),
                None => min_truncation(spec.dict, window, level),
            },
        }
    }

    /// Pointwise standard deviation of samples, √E|F(z)|²: the model kernel,
    /// or Σ|Ψ_k(z)|² over the truncated dictionary of a transform.
    pub fn std_dev(&self, s: &AnalyticSeries) -> Box<dyn Fn(Complex64) -> f64 + Sync> {
        match *self {
            Source::Model(m) => Box::new(move |z| covariance(m, z, z).map_or(f64::NAN, |k| k.re.sqrt())),
            Source::Transform { .. } => {
                let unit = AnalyticSeries::new(s.family, vec![Complex64::new(1.0, 0.0); s.coeffs.len()], s.domain, s.provenance);
                let w: Vec<f64> = unit.monomial_coeffs().iter().map(|c| c.norm_sqr()).collect();
                Box::new(move |z| w.iter().rev().fold(0.0, |acc, c| acc * z.norm_sqr() + c).sqrt())
            }
        }
    }

    pub fn sample(&self, truncation: usize, seed: u64, stream: u64) -> Result<AnalyticSeries> {
        match self {
            Source::Model(m) => sample_gaf(*m, truncation, seed, stream),
            Source::Transform { spec, signal } => {
                let mut xi = sample_noise(truncation, seed, stream);
                if let Some(s) = signal {
                    match xi.coeffs.get_mut(s.k) {
                        Some(c) => *c += s.amplitude,
                        None => {
                            return Err(Error::Domain(format!(
                                "signal_k = {} exceeds the truncation {truncation}",
                                s.k
                            )))
                        }
                    }
                }
                transform_noise(spec, &xi)
            }
        }
    }
}
