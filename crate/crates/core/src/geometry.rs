//! Windows and closed curves in the complex plane.

use crate::error::{domain, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// A compact evaluation window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    /// Axis-aligned rectangle [x0, x1] × [y0, y1].
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    /// Closed disk.
    Disk { center: Complex64, radius: f64 },
}

impl Window {
    pub fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Window> {
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return domain(format!("degenerate rectangle [{x0},{x1}]x[{y0},{y1}]"));
        }
        Ok(Window::Rect { x0, x1, y0, y1 })
    }

    pub fn square(half: f64) -> Window {
        Window::Rect { x0: -half, x1: half, y0: -half, y1: half }
    }

    pub fn disk(center: Complex64, radius: f64) -> Result<Window> {
        if !(radius > 0.0 && radius.is_finite()) {
            return domain(format!("disk radius must be positive, got {radius}"));
        }
        Ok(Window::Disk { center, radius })
    }

    pub fn centered_disk(radius: f64) -> Result<Window> {
        Window::disk(Complex64::new(0.0, 0.0), radius)
    }

    /// Largest modulus of a point of the window.
    pub fn max_radius(&self) -> f64 {
        match *self {
            Window::Rect { x0, x1, y0, y1 } => {
                let x = x0.abs().max(x1.abs());
                let y = y0.abs().max(y1.abs());
                x.hypot(y)
            }
            Window::Disk { center, radius } => center.norm() + radius,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Window::Rect { x0, x1, y0, y1 } => z.re >= x0 && z.re <= x1 && z.im >= y0 && z.im <= y1,
            Window::Disk { center, radius } => (z - center).norm() <= radius,
        }
    }

    /// Smallest rectangle containing the window.
    pub fn bounding_rect(&self) -> (f64, f64, f64, f64) {
        match *self {
            Window::Rect { x0, x1, y0, y1 } => (x0, x1, y0, y1),
            Window::Disk { center, radius } => {
                (center.re - radius, center.re + radius, center.im - radius, center.im + radius)
            }
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            Window::Rect { x0, x1, y0, y1 } => (x1 - x0) * (y1 - y0),
            Window::Disk { radius, .. } => PI * radius * radius,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Window::Rect { x0, x1, y0, y1 } => write!(f, "{x0},{x1},{y0},{y1}"),
            Window::Disk { center, radius } if center == Complex64::new(0.0, 0.0) => {
                write!(f, "disk:{radius}")
            }
            Window::Disk { center, radius } => write!(f, "disk:{radius}@{},{}", center.re, center.im),
        }
    }
}

/// Parses `"x0,x1,y0,y1"`, `"disk:r"` or `"disk:r@cx,cy"`.
impl FromStr for Window {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Window> {
        let s = s.trim();
        let nums = |t: &str| -> Result<Vec<f64>> {
            t.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| crate::Error::Domain(format!("bad number '{v}' in window"))))
                .collect()
        };
        if let Some(rest) = s.strip_prefix("disk:") {
            let (r, c) = match rest.split_once('@') {
                Some((r, c)) => (r, Some(c)),
                None => (rest, None),
            };
            let r = nums(r)?;
            if r.len() != 1 {
                return domain("disk window needs one radius");
            }
            let center = match c {
                None => Complex64::new(0.0, 0.0),
                Some(c) => {
                    let c = nums(c)?;
                    if c.len() != 2 {
                        return domain("disk centre needs two coordinates");
                    }
                    Complex64::new(c[0], c[1])
                }
            };
            return Window::disk(center, r[0]);
        }
        let v = nums(s)?;
        if v.len() != 4 {
            return domain(format!("window '{s}' needs four numbers x0,x1,y0,y1"));
        }
        Window::rect(v[0], v[1], v[2], v[3])
    }
}

/// A positively oriented closed contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    Circle { center: Complex64, radius: f64 },
}

impl Curve {
    pub fn from_window(w: &Window) -> Curve {
        match *w {
            Window::Rect { x0, x1, y0, y1 } => Curve::Rect { x0, x1, y0, y1 },
            Window::Disk { center, radius } => Curve::Circle { center, radius },
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Curve::Rect { x0, x1, y0, y1 } => 2.0 * ((x1 - x0) + (y1 - y0)),
            Curve::Circle { radius, .. } => 2.0 * PI * radius,
        }
    }

    /// Point at arc-length fraction t ∈ [0, 1).
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Curve::Circle { center, radius } => center + Complex64::from_polar(radius, 2.0 * PI * t),
            Curve::Rect { x0, x1, y0, y1 } => {
                let (w, h) = (x1 - x0, y1 - y0);
                let mut s = t.rem_euclid(1.0) * 2.0 * (w + h);
                if s < w {
                    return Complex64::new(x0 + s, y0);
                }
                s -= w;
                if s < h {
                    return Complex64::new(x1, y0 + s);
                }
                s -= h;
                if s < w {
                    return Complex64::new(x1 - s, y1);
                }
                s -= w;
                Complex64::new(x0, y1 - s)
            }
        }
    }

    /// The window enclosed by the curve.
    pub fn window(&self) -> Window {
        match *self {
            Curve::Rect { x0, x1, y0, y1 } => Window::Rect { x0, x1, y0, y1 },
            Curve::Circle { center, radius } => Window::Disk { center, radius },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let w: Window = "-2,2,-1.5,1.5".parse().unwrap();
        assert_eq!(w, Window::Rect { x0: -2.0, x1: 2.0, y0: -1.5, y1: 1.5 });
        assert_eq!(w.to_string().parse::<Window>().unwrap(), w);
        let d: Window = "disk:0.5".parse().unwrap();
        assert_eq!(d.max_radius(), 0.5);
        assert!("1,2,3".parse::<Window>().is_err());
        assert!("2,1,0,1".parse::<Window>().is_err());
        assert!("disk:-1".parse::<Window>().is_err());
    }

    #[test]
    fn rect_curve_walks_the_boundary() {
        let c = Curve::Rect { x0: 0.0, x1: 2.0, y0: 0.0, y1: 1.0 };
        assert_eq!(c.point(0.0), Complex64::new(0.0, 0.0));
        assert_eq!(c.point(2.0 / 6.0), Complex64::new(2.0, 0.0));
        assert_eq!(c.point(0.5), Complex64::new(2.0, 1.0));
        assert_eq!(c.point(5.0 / 6.0), Complex64::new(0.0, 1.0));
    }
}
