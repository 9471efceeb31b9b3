//! Zeros of analytic series: argument-principle subdivision with Newton
//! refinement, a simultaneous-iteration polynomial root oracle, and Rouché
//! certification of zero counts under truncation.

use crate::error::{domain, Error, Result};
use crate::geometry::{Curve, Window};
use crate::noise::concentration_bound;
use crate::transforms::{ck_and_tail, min_truncation, AnalyticSeries, DictionaryFamily, Domain};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

type C64 = Complex64;

/// Plain polynomial Σ a_j z^j with Horner evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(coeffs: Vec<C64>) -> Poly {
        Poly { coeffs }
    }

    /// The series divided by its deterministic origin zero, as monomials.
    pub fn from_series(s: &AnalyticSeries) -> Poly {
        Poly { coeffs: s.deflated_monomials() }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// (P(z), P'(z)).
    pub fn eval_d(&self, z: C64) -> (C64, C64) {
        let zero = C64::new(0.0, 0.0);
        let mut p = zero;
        let mut d = zero;
        for c in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    /// Σ |a_j| |z|^j.
    pub fn scale(&self, z: C64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Upper bound on |P'| over |z| ≤ r.
    pub fn derivative_bound(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for (j, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * r + c.norm() * j as f64;
        }
        acc
    }

    /// Upper bound on |P''| over |z| ≤ r.
    pub fn second_derivative_bound(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for (j, c) in self.coeffs.iter().enumerate().skip(2).rev() {
            acc = acc * r + c.norm() * (j * (j - 1)) as f64;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != C64::new(0.0, 0.0)).unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroMethod {
    Subdivision,
    Oracle,
}

/// Located zeros inside a window.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    /// Sorted by (re, im).
    pub points: Vec<C64>,
    pub multiplicities: Vec<usize>,
    /// |F| at each point.
    pub residuals: Vec<f64>,
    pub window: Window,
    pub method: ZeroMethod,
    /// Zeros present in every sample (the origin of the higher-order planar model).
    pub excluded_deterministic: Vec<(C64, usize)>,
    /// Numerically suspicious events (near-multiple zeros, fallbacks).
    pub diagnostics: Vec<String>,
}

impl ZeroSet {
    /// Number of zeros counted with multiplicity.
    pub fn count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Zeros with multiplicity inside a region.
    pub fn count_in(&self, inside: impl Fn(C64) -> bool) -> usize {
        self.points.iter().zip(&self.multiplicities).filter(|(p, _)| inside(**p)).map(|(_, m)| m).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn center(&self) -> C64 {
        C64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }
    fn size(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }
    fn contains(&self, z: C64, slack: f64) -> bool {
        z.re >= self.x0 - slack && z.re <= self.x1 + slack && z.im >= self.y0 - slack && z.im <= self.y1 + slack
    }
    fn corners(&self) -> [C64; 4] {
        [
            C64::new(self.x0, self.y0),
            C64::new(self.x1, self.y0),
            C64::new(self.x1, self.y1),
            C64::new(self.x0, self.y1),
        ]
    }
}

const NEAR_ZERO: f64 = 1e-13;
const MAX_DEPTH: usize = 48;

fn value_checked(p: &Poly, z: C64) -> Result<C64> {
    let v = p.eval(z);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Numeric(format!("series value not finite at {z}")));
    }
    if v.norm() <= NEAR_ZERO * p.scale(z) {
        return Err(Error::BoundaryZero(format!("|F| vanishes to rounding at {z}")));
    }
    Ok(v)
}

/// Change of arg F along a path piece t ∈ [t0, t1] of length `len`, on which
/// |z| ≤ rho. A piece is accepted once a derivative bound keeps F inside a
/// disk around a sampled value that excludes the origin, so each half turns
/// by less than π/2; otherwise it is bisected.
#[allow(clippy::too_many_arguments)]
fn path_phase(
    p: &Poly,
    at: &dyn Fn(f64) -> C64,
    t0: f64,
    t1: f64,
    f0: C64,
    f1: C64,
    len: f64,
    rho: &dyn Fn(f64, f64) -> f64,
    depth: usize,
) -> Result<f64> {
    let tm = 0.5 * (t0 + t1);
    let zm = at(tm);
    let fm = value_checked(p, zm)?;
    let r = rho(t0, t1);
    let h = 0.5 * len;
    // second-order bound around the midpoint: F stays in the disk |w − F(m)| < |F(m)|
    let (_, dm) = p.eval_d(zm);
    let near_mid = dm.norm() * h + 0.5 * p.second_derivative_bound(r) * h * h < fm.norm();
    if near_mid || h * p.derivative_bound(r) < f0.norm().min(f1.norm()) {
        return Ok((fm / f0).arg() + (f1 / fm).arg());
    }
    if depth >= MAX_DEPTH {
        return Err(Error::BoundaryZero(format!("phase unresolved near {}", at(tm))));
    }
    Ok(path_phase(p, at, t0, tm, f0, fm, 0.5 * len, rho, depth + 1)?
        + path_phase(p, at, tm, t1, fm, f1, 0.5 * len, rho, depth + 1)?)
}

fn segment_phase(p: &Poly, a: C64, b: C64, fa: C64, fb: C64) -> Result<f64> {
    let at = |t: f64| a + (b - a) * t;
    let rho = |t0: f64, t1: f64| at(t0).norm().max(at(t1).norm());
    path_phase(p, &at, 0.0, 1.0, fa, fb, (b - a).norm(), &rho, 0)
}

fn to_winding(total: f64) -> Result<i64> {
    let w = total / (2.0 * PI);
    let r = w.round();
    if (w - r).abs() > 0.05 {
        return Err(Error::BoundaryZero(format!("non-integer winding {w}")));
    }
    Ok(r as i64)
}

fn rect_winding(p: &Poly, r: &Rect) -> Result<i64> {
    let c = r.corners();
    let f: Vec<C64> = c.iter().map(|z| value_checked(p, *z)).collect::<Result<_>>()?;
    let mut total = 0.0;
    for i in 0..4 {
        let j = (i + 1) % 4;
        total += segment_phase(p, c[i], c[j], f[i], f[j])?;
    }
    to_winding(total)
}

/// Number of zeros of the series inside an axis-aligned cell, by the
/// argument principle.
pub fn winding_number(s: &AnalyticSeries, cell: &Window) -> Result<i64> {
    let p = Poly::new(s.monomial_coeffs());
    poly_winding(&p, &Curve::from_window(cell))
}

/// Winding of P along a rectangle or circle.
pub fn poly_winding(p: &Poly, curve: &Curve) -> Result<i64> {
    match *curve {
        Curve::Rect { x0, x1, y0, y1 } => rect_winding(p, &Rect { x0, x1, y0, y1 }),
        Curve::Circle { center, radius } => {
            let m = 16;
            let at = |t: f64| center + C64::from_polar(radius, 2.0 * PI * t);
            let rho = |_: f64, _: f64| center.norm() + radius;
            let vals: Vec<C64> = (0..=m).map(|j| value_checked(p, at(j as f64 / m as f64))).collect::<Result<_>>()?;
            let piece = 2.0 * PI * radius / m as f64;
            let mut total = 0.0;
            for j in 0..m {
                let (t0, t1) = (j as f64 / m as f64, (j + 1) as f64 / m as f64);
                total += path_phase(p, &at, t0, t1, vals[j], vals[j + 1], piece, &rho, 0)?;
            }
            to_winding(total)
        }
    }
}

/// Newton iteration from z0; Some(root) once the residual reaches rounding level.
fn newton(p: &Poly, z0: C64, max_iter: usize) -> Option<C64> {
    let mut z = z0;
    for _ in 0..max_iter {
        let (f, d) = p.eval_d(z);
        if f.norm() <= 1e-14 * p.scale(z) {
            return Some(z);
        }
        if d == C64::new(0.0, 0.0) || !(d.re.is_finite() && d.im.is_finite()) {
            return None;
        }
        let step = f / d;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    let (f, _) = p.eval_d(z);
    (f.norm() <= 1e-12 * p.scale(z)).then_some(z)
}

struct Found {
    z: C64,
    mult: usize,
    note: Option<String>,
}

fn split(r: &Rect, fx: f64, fy: f64) -> [Rect; 4] {
    let xm = r.x0 + fx * (r.x1 - r.x0);
    let ym = r.y0 + fy * (r.y1 - r.y0);
    [
        Rect { x0: r.x0, x1: xm, y0: r.y0, y1: ym },
        Rect { x0: xm, x1: r.x1, y0: r.y0, y1: ym },
        Rect { x0: r.x0, x1: xm, y0: ym, y1: r.y1 },
        Rect { x0: xm, x1: r.x1, y0: ym, y1: r.y1 },
    ]
}

fn resolve_cell(p: &Poly, r: &Rect, winding: i64, depth: usize, out: &mut Vec<Found>) -> Result<()> {
    if winding <= 0 {
        if winding < 0 {
            return Err(Error::Numeric(format!("negative winding {winding} in a cell")));
        }
        return Ok(());
    }
    let size = r.size();
    if winding == 1 {
        if let Some(z) = newton(p, r.center(), 100) {
            if r.contains(z, 1e-12 * (1.0 + size)) {
                out.push(Found { z, mult: 1, note: None });
                return Ok(());
            }
        }
    }
    if depth >= MAX_DEPTH || size <= 1e-11 * (1.0 + r.center().norm()) {
        let z = newton(p, r.center(), 100).filter(|z| r.contains(*z, size)).unwrap_or(r.center());
        out.push(Found {
            z,
            mult: winding as usize,
            note: Some(format!("cell of size {size:e} at {z} keeps winding {winding}")),
        });
        return Ok(());
    }
    let mut last = None;
    for (fx, fy) in [(0.5, 0.5), (0.4731, 0.5269), (0.5413, 0.4587)] {
        let cells = split(r, fx, fy);
        let w: Result<Vec<i64>> = cells.iter().map(|c| rect_winding(p, c)).collect();
        match w {
            Ok(w) if w.iter().sum::<i64>() == winding => {
                for (c, wi) in cells.iter().zip(w) {
                    resolve_cell(p, c, wi, depth + 1, out)?;
                }
                return Ok(());
            }
            Ok(w) => last = Some(Error::Numeric(format!("sub-cell windings {w:?} do not add to {winding}"))),
            Err(e) => last = Some(e),
        }
    }
    let z = newton(p, r.center(), 100).filter(|z| r.contains(*z, size)).unwrap_or(r.center());
    out.push(Found {
        z,
        mult: winding as usize,
        note: Some(format!("cell of size {size:e} at {z} with winding {winding} left unsplit: {}", last.unwrap())),
    });
    Ok(())
}

fn locate_in_rect(p: &Poly, outer: Rect, grid: usize, active: &(dyn Fn(&Rect) -> bool + Sync)) -> Result<(Vec<Found>, Vec<String>)> {
    let g = grid.max(1);
    let hx = (outer.x1 - outer.x0) / g as f64;
    let hy = (outer.y1 - outer.y0) / g as f64;
    let node = |i: usize, j: usize| {
        let x = if i == g { outer.x1 } else { outer.x0 + i as f64 * hx };
        let y = if j == g { outer.y1 } else { outer.y0 + j as f64 * hy };
        C64::new(x, y)
    };
    let cell = |i: usize, j: usize| {
        let (a, b) = (node(i, j), node(i + 1, j + 1));
        Rect { x0: a.re, x1: b.re, y0: a.im, y1: b.im }
    };
    let on: Vec<bool> = (0..g * g).map(|idx| active(&cell(idx % g, idx / g))).collect();
    let is_on = |i: usize, j: usize| i < g && j < g && on[j * g + i];
    let touches = |i: usize, j: usize| {
        is_on(i, j) || (i > 0 && is_on(i - 1, j)) || (j > 0 && is_on(i, j - 1)) || (i > 0 && j > 0 && is_on(i - 1, j - 1))
    };
    let one = C64::new(1.0, 0.0);
    // node values, row-major over j (imaginary) then i (real); unused nodes hold 1
    let vals: Vec<C64> = (0..(g + 1) * (g + 1))
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % (g + 1), idx / (g + 1));
            if touches(i, j) {
                value_checked(p, node(i, j))
            } else {
                Ok(one)
            }
        })
        .collect::<Result<_>>()?;
    let v = |i: usize, j: usize| vals[j * (g + 1) + i];
    // horizontal edges (i,j)→(i+1,j) and vertical edges (i,j)→(i,j+1)
    let hor: Vec<f64> = (0..g * (g + 1))
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % g, idx / g);
            if is_on(i, j) || (j > 0 && is_on(i, j - 1)) {
                segment_phase(p, node(i, j), node(i + 1, j), v(i, j), v(i + 1, j))
            } else {
                Ok(0.0)
            }
        })
        .collect::<Result<_>>()?;
    let ver: Vec<f64> = (0..g * (g + 1))
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % (g + 1), idx / (g + 1));
            if is_on(i, j) || (i > 0 && is_on(i - 1, j)) {
                segment_phase(p, node(i, j), node(i, j + 1), v(i, j), v(i, j + 1))
            } else {
                Ok(0.0)
            }
        })
        .collect::<Result<_>>()?;
    let h = |i: usize, j: usize| hor[j * g + i];
    let vv = |i: usize, j: usize| ver[j * (g + 1) + i];
    let cells: Vec<(usize, usize, i64)> = (0..g * g)
        .filter(|idx| on[*idx])
        .map(|idx| {
            let (i, j) = (idx % g, idx / g);
            let total = h(i, j) + vv(i + 1, j) - h(i, j + 1) - vv(i, j);
            to_winding(total).map(|w| (i, j, w))
        })
        .filter(|r| !matches!(r, Ok((_, _, 0))))
        .collect::<Result<_>>()?;
    let found: Vec<Vec<Found>> = cells
        .par_iter()
        .map(|&(i, j, w)| {
            let r = cell(i, j);
            let mut out = Vec::new();
            resolve_cell(p, &r, w, 0, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut notes = Vec::new();
    let mut all = Vec::new();
    for f in found.into_iter().flatten() {
        if let Some(n) = &f.note {
            notes.push(n.clone());
        }
        all.push(f);
    }
    Ok((all, notes))
}

fn finish(p: &Poly, found: Vec<Found>, window: &Window, method: ZeroMethod, deterministic: usize, mut notes: Vec<String>) -> ZeroSet {
    let mut pts: Vec<(C64, usize)> = found.into_iter().map(|f| (f.z, f.mult)).filter(|(z, _)| window.contains(*z)).collect();
    pts.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    // merge duplicates closer than the separation floor
    let mut merged: Vec<(C64, usize)> = Vec::with_capacity(pts.len());
    for (z, m) in pts {
        if let Some(last) = merged.iter_mut().find(|(w, _)| (*w - z).norm() < 1e-10 * (1.0 + z.norm())) {
            last.1 += m;
            notes.push(format!("merged coincident zeros near {z}"));
        } else {
            merged.push((z, m));
        }
    }
    for (z, m) in &merged {
        if *m == 1 {
            let (_, d) = p.eval_d(*z);
            if d.norm() < 1e-8 * p.scale(*z) {
                notes.push(format!("nearly multiple zero at {z}"));
            }
        }
    }
    ZeroSet {
        residuals: merged.iter().map(|(z, _)| p.eval(*z).norm()).collect(),
        points: merged.iter().map(|(z, _)| *z).collect(),
        multiplicities: merged.iter().map(|(_, m)| *m).collect(),
        window: *window,
        method,
        excluded_deterministic: if deterministic > 0 { vec![(C64::new(0.0, 0.0), deterministic)] } else { vec![] },
        diagnostics: notes,
    }
}

/// Zeros of the series in a window: grid×grid cells, windings from shared
/// adaptive edge phases, Newton refinement with quadtree fallback. A
/// deterministic origin zero is divided out first and reported separately.
/// If a zero sits on an internal grid line the grid is shifted and retried.
pub fn locate_zeros(s: &AnalyticSeries, window: &Window, grid: usize) -> Result<ZeroSet> {
    let p = Poly::from_series(s);
    let mut grid = grid;
    match *window {
        Window::Rect { x0, x1, y0, y1 } => {
            for z in [C64::new(x0, y0), C64::new(x1, y0), C64::new(x1, y1), C64::new(x0, y1)] {
                if !s.domain.contains(z) {
                    return domain(format!("window corner {z} outside the series domain"));
                }
            }
        }
        Window::Disk { center, radius } => {
            if s.domain == Domain::Disk {
                let gap = 1.0 - center.norm() - radius;
                if gap <= 0.0 {
                    return domain(format!("window {window} reaches the unit circle"));
                }
                // cells meeting the disk must stay inside the unit disk
                let need = (2.0 * std::f64::consts::SQRT_2 * radius / (0.9 * gap)).ceil() as usize;
                grid = grid.max(need);
            }
        }
    }
    locate_poly_zeros(&p, window, grid, s.deterministic_zero_order)
}

/// As [`locate_zeros`] for a plain polynomial. For disk windows only the
/// grid cells meeting the disk are examined.
pub fn locate_poly_zeros(p: &Poly, window: &Window, grid: usize, deterministic: usize) -> Result<ZeroSet> {
    if grid == 0 {
        return domain("grid must be positive");
    }
    let (x0, x1, y0, y1) = window.bounding_rect();
    let outer = Rect { x0, x1, y0, y1 };
    let active = |r: &Rect| match *window {
        Window::Rect { .. } => true,
        Window::Disk { center, radius } => {
            let dx = (center.re.clamp(r.x0, r.x1) - center.re).abs();
            let dy = (center.im.clamp(r.y0, r.y1) - center.im).abs();
            dx.hypot(dy) <= radius
        }
    };
    let mut last = None;
    for g in [grid, grid + 1, grid + 3] {
        match locate_in_rect(p, outer, g, &active) {
            Ok((found, notes)) => return Ok(finish(p, found, window, ZeroMethod::Subdivision, deterministic, notes)),
            Err(e @ Error::BoundaryZero(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// All zeros of a polynomial series on the extended plane: |z| ≤ 1 directly
/// and |z| > 1 through the reversed polynomial. The count with multiplicity
/// (zeros at ∞ included) always equals the degree bound len − 1.
pub fn sphere_zeros(s: &AnalyticSeries, grid: usize) -> Result<(ZeroSet, usize)> {
    let p = Poly::from_series(s);
    let n = p.coeffs.len().saturating_sub(1);
    let unit = Window::centered_disk(1.0)?;
    let inner = locate_poly_zeros(&p, &unit, grid, s.deterministic_zero_order)?;
    let rev = Poly::new(p.coeffs.iter().rev().cloned().collect());
    let outer = locate_poly_zeros(&rev, &unit, grid, 0)?;
    let mut at_infinity = 0;
    let mut found: Vec<Found> = inner
        .points
        .iter()
        .zip(&inner.multiplicities)
        .map(|(z, m)| Found { z: *z, mult: *m, note: None })
        .collect();
    for (w, m) in outer.points.iter().zip(&outer.multiplicities) {
        if w.norm() >= 1.0 {
            continue;
        }
        if w.norm() == 0.0 || w.norm() < 1e-300 {
            at_infinity += m;
            continue;
        }
        found.push(Found { z: 1.0 / w, mult: *m, note: None });
    }
    let big = Window::centered_disk(f64::MAX.sqrt())?;
    let mut notes = inner.diagnostics.clone();
    notes.extend(outer.diagnostics.iter().cloned());
    let set = finish(&p, found, &big, ZeroMethod::Subdivision, s.deterministic_zero_order, notes);
    if set.count() + at_infinity != n {
        return Err(Error::Numeric(format!(
            "projective count {} + {at_infinity} at infinity differs from degree {n}",
            set.count()
        )));
    }
    Ok((set, at_infinity))
}

/// All roots of Σ a_j z^j by Aberth–Ehrlich iteration from Newton-polygon
/// starting circles, then Newton polish.
pub fn poly_roots_oracle(coeffs: &[C64]) -> Result<Vec<C64>> {
    let zero = C64::new(0.0, 0.0);
    let hi = match coeffs.iter().rposition(|c| *c != zero) {
        Some(h) => h,
        None => return domain("zero polynomial has no isolated roots"),
    };
    if hi > 512 {
        return Err(Error::Refused(format!("degree {hi} exceeds the oracle limit 512")));
    }
    let lo = coeffs.iter().position(|c| *c != zero).unwrap();
    let mut roots = vec![zero; lo];
    let a = &coeffs[lo..=hi];
    let n = a.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    // rescale z = σ y so that the extreme coefficients balance
    let ln_sigma = (a[0].norm().ln() - a[n].norm().ln()) / n as f64;
    let b: Vec<C64> = a.iter().enumerate().map(|(j, c)| c * (j as f64 * ln_sigma).exp()).collect();
    let bmax = b.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let b: Vec<C64> = b.iter().map(|c| c / bmax).collect();
    let q = Poly::new(b);
    let mut y = newton_polygon_start(&q.coeffs);
    let ratio = |z: C64| -> C64 {
        if z.norm() <= 1.0 {
            let (f, d) = q.eval_d(z);
            f / d
        } else {
            // through the reversed polynomial: P(z) = z^n R(1/z)
            let w = 1.0 / z;
            let mut r = zero;
            let mut rd = zero;
            for c in q.coeffs.iter() {
                rd = rd * w + r;
                r = r * w + c;
            }
            // P'/P = n/z − w² R'(w)/(z^0 R(w)) · (1/z^0); with dw/dz = −w²
            let inv = C64::new(n as f64, 0.0) * w - w * w * rd / r;
            1.0 / inv
        }
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        let prev = y.clone();
        for i in 0..n {
            let r = ratio(prev[i]);
            if !(r.re.is_finite() && r.im.is_finite()) {
                continue;
            }
            let mut s = zero;
            for (j, yj) in y.iter().enumerate() {
                if j != i {
                    s += 1.0 / (prev[i] - yj);
                }
            }
            let step = r / (C64::new(1.0, 0.0) - r * s);
            if step.re.is_finite() && step.im.is_finite() {
                y[i] = prev[i] - step;
                moved = moved.max(step.norm() / (1.0 + y[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    let sigma = ln_sigma.exp();
    let p = Poly::new(a.to_vec());
    for yi in y {
        let z0 = yi * sigma;
        roots.push(newton(&p, z0, 50).unwrap_or(z0));
    }
    roots.sort_by(|u, v| u.re.total_cmp(&v.re).then(u.im.total_cmp(&v.im)));
    Ok(roots)
}

fn newton_polygon_start(b: &[C64]) -> Vec<C64> {
    let n = b.len() - 1;
    let pts: Vec<(f64, f64)> = b
        .iter()
        .enumerate()
        .map(|(j, c)| (j as f64, if c.norm() > 0.0 { c.norm().ln() } else { f64::NEG_INFINITY }))
        .collect();
    // upper convex hull of (j, ln|b_j|)
    let mut hull: Vec<usize> = Vec::new();
    for j in 0..=n {
        if pts[j].1 == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let (i1, i2) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (pts[i2].0 - pts[i1].0) * (pts[j].1 - pts[i1].1) - (pts[i2].1 - pts[i1].1) * (pts[j].0 - pts[i1].0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, k) = (w[0], w[1]);
        let m = k - i;
        let r = ((pts[i].1 - pts[k].1) / m as f64).exp();
        for t in 0..m {
            let ang = 2.0 * PI * t as f64 / m as f64 + 2.0 * PI * i as f64 / n as f64 + 0.4;
            out.push(C64::from_polar(r, ang));
        }
    }
    out
}

/// Rouché certificate for the zero count of L ξ inside a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct RoucheCertificate {
    pub curve: Curve,
    pub n: usize,
    /// Certified lower bound of |L ξ^(n)| on the curve, times (1 − safety).
    pub eps: f64,
    /// Sampled minimum of |L ξ^(n)| on the curve.
    pub boundary_min: f64,
    pub samples: usize,
    /// Weighted dictionary tail over the curve's window.
    pub tail: f64,
    pub tail_ok: bool,
    pub count: usize,
    /// 1 − min(1, 2e^{−n ε²/2}).
    pub prob_bound: f64,
    pub vacuous: bool,
}

/// Certifies that L ξ^(n) and L ξ have the same number of zeros inside the
/// curve with probability at least `prob_bound`. The series must carry
/// exactly n+1 coefficients in its dictionary; the weighted tail over the
/// enclosed window must be ≤ 1.
pub fn rouche_certify(s_n: &AnalyticSeries, curve: &Curve, n: usize, safety: f64) -> Result<RoucheCertificate> {
    if s_n.coeffs.len() != n + 1 {
        return domain(format!("series has {} coefficients, expected n+1 = {}", s_n.coeffs.len(), n + 1));
    }
    if !(0.0..1.0).contains(&safety) {
        return domain("safety must lie in [0, 1)");
    }
    let window = curve.window();
    let dict: DictionaryFamily = s_n.family;
    let rep = ck_and_tail(dict, &window, n)?;
    if rep.tail > 1.0 {
        let required = min_truncation(dict, &window, 1.0)?;
        return Err(Error::TailCondition { n, required });
    }
    let p = Poly::new(s_n.monomial_coeffs());
    let lip = p.derivative_bound(window.max_radius());
    let len = curve.length();
    let mut m = 256usize;
    let mut prev_lower = f64::NEG_INFINITY;
    let (lower, bmin) = loop {
        let bmin = (0..m)
            .into_par_iter()
            .map(|j| p.eval(curve.point(j as f64 / m as f64)).norm())
            .reduce(|| f64::INFINITY, f64::min);
        let lower = bmin - lip * 0.5 * len / m as f64;
        if lower > 0.0 && (lower - prev_lower) <= 0.01 * lower {
            break (lower, bmin);
        }
        if m >= 1 << 22 {
            break (lower, bmin);
        }
        prev_lower = lower;
        m *= 2;
    };
    if !(lower > 0.0) {
        return Err(Error::Refused(format!("boundary modulus not certified positive (sampled min {bmin:e})")));
    }
    let eps = lower * (1.0 - safety);
    let count = poly_winding(&p, curve)?;
    let (prob, vacuous) = rouche_probability(n, eps);
    Ok(RoucheCertificate {
        curve: *curve,
        n,
        eps,
        boundary_min: bmin,
        samples: m,
        tail: rep.tail,
        tail_ok: true,
        count: count.max(0) as usize,
        prob_bound: prob,
        vacuous,
    })
}

/// 1 − min(1, 2e^{−n ε²/2}) and whether it is vacuous (zero).
pub fn rouche_probability(n: usize, eps: f64) -> (f64, bool) {
    let p = 1.0 - concentration_bound(n, eps);
    (p.max(0.0), p <= 0.0)
}

#[cfg(test)]
mod tests;
