//! Uncertified one-dimensional minimization.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A non-degenerate real interval `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval1D {
    lo: f64,
    hi: f64,
}

impl Interval1D {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] is empty")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Min1d {
    pub x: f64,
    pub fx: f64,
    pub evals: usize,
}

const SCAN: usize = 64;

/// Coarse scan, golden-section refinement around the best sample, then
/// centered parabolic steps on shrinking stencils. The parabolic stage
/// recovers digits that golden section loses where `f` is flat to rounding.
pub fn minimize_1d(mut f: impl FnMut(f64) -> f64, interval: Interval1D, tol: f64) -> Result<Min1d> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (lo, hi) = (interval.lo, interval.hi);
    let w = interval.width();
    let mut evals = 0;
    let mut eval = |x: f64| {
        evals += 1;
        f(x)
    };

    let xs: Vec<f64> = (0..=SCAN + 1).map(|i| lo + w * i as f64 / (SCAN + 1) as f64).collect();
    let mut best = 1;
    let mut fbest = f64::INFINITY;
    for (i, &x) in xs.iter().enumerate().take(SCAN + 1).skip(1) {
        let v = eval(x);
        if v < fbest {
            fbest = v;
            best = i;
        }
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (xs[best - 1], xs[best + 1]);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    let floor = 4.0 * f64::EPSILON * (1.0 + a.abs().max(b.abs()));
    while b - a > (0.25 * tol).max(floor) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    let (mut x, mut fx) = if fc < fd { (c, fc) } else { (d, fd) };
    if fbest < fx {
        x = xs[best];
        fx = fbest;
    }

    for scale in [1e-3, 1e-4, 1e-5, 1e-6] {
        let h = scale * w;
        if x - h <= lo || x + h >= hi {
            continue;
        }
        let fm = eval(x - h);
        let fp = eval(x + h);
        let curv = fp - 2.0 * fx + fm;
        if !(curv > 0.0) {
            continue;
        }
        let cand = x - 0.5 * h * (fp - fm) / curv;
        if (cand - x).abs() > h || cand <= lo || cand >= hi {
            continue;
        }
        let fcand = eval(cand);
        if fcand <= fx {
            x = cand;
            fx = fcand;
        }
    }
    Ok(Min1d { x, fx, evals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_square() {
        let r = minimize_1d(|x| (x - 1.0) * (x - 1.0), Interval1D::new(0.0, 2.0).unwrap(), 1e-9).unwrap();
        assert!((r.x - 1.0).abs() < 1e-9);
        assert!(r.fx < 1e-17);
    }

    #[test]
    fn stiff_rational_minimum() {
        let g = |c: f64| (3.0 * c - 1.0).powi(3) / (c * (4.0 * c - 1.0));
        let hi = (5.0 - 17f64.sqrt()) / 4.0;
        let r = minimize_1d(g, Interval1D::new(1.0 / 6.0, hi).unwrap(), 1e-9).unwrap();
        let c0 = (13f64.sqrt() - 1.0) / 12.0;
        assert!((r.x - c0).abs() < 1e-9, "{} vs {}", r.x, c0);
        assert!((r.fx - (13.0 * 13f64.sqrt() - 35.0) / 8.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_minimum_is_approached() {
        let r = minimize_1d(|x| x, Interval1D::new(0.0, 1.0).unwrap(), 1e-6).unwrap();
        assert!(r.x < 1e-6 + 1.0 / 65.0);
    }

    #[test]
    fn empty_interval_rejected() {
        assert!(Interval1D::new(1.0, 1.0).is_err());
    }
}
