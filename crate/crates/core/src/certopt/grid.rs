//! Exhaustive uniform-grid certification.

use std::time::Instant;

use rayon::prelude::*;

use super::certificate::{CertMode, Certificate, Conclusion};
use super::torus::rounding_slack;
use crate::polyalg::ExpSum;
use crate::{Error, Result, C64};

/// Sample points `k·step` for `k = 0..=K` on every axis, with `K·step ≥ upper`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub step: f64,
    pub upper: f64,
}

impl GridSpec {
    /// Covers `[0, 2π]` with covering radius `step/2`.
    pub fn covering(step: f64) -> Self {
        Self {
            step,
            upper: std::f64::consts::TAU,
        }
    }

    /// Reference grid `[0, 6.2832]` with step `4·10⁻⁵`.
    #[allow(clippy::approx_constant)]
    pub fn reference() -> Self {
        Self {
            step: 4e-5,
            upper: 6.2832,
        }
    }

    pub fn points_per_axis(&self) -> u64 {
        ((self.upper / self.step) - 1e-7).ceil().max(0.0) as u64 + 1
    }

    /// Total number of samples in dimension `m`, as a float to survive overflow.
    pub fn total_points(&self, m: usize) -> f64 {
        (self.points_per_axis() as f64).powi(m as i32)
    }
}

/// Grid certification of `|F| < τ` on `[0, 2π]^m`.
pub fn grid_certify(f: &ExpSum, lipschitz: f64, tau: f64, step: f64) -> Result<Certificate> {
    grid_certify_spec(f, lipschitz, tau, GridSpec::covering(step))
}

pub fn grid_certify_spec(f: &ExpSum, lipschitz: f64, tau: f64, spec: GridSpec) -> Result<Certificate> {
    if !(spec.step > 0.0) || !spec.step.is_finite() {
        return Err(Error::InvalidArgument(format!("grid step {} must be positive", spec.step)));
    }
    if !(lipschitz >= 0.0) {
        return Err(Error::InvalidArgument(format!("Lipschitz constant {lipschitz} must be non-negative")));
    }
    if spec.upper + spec.step / 2.0 < std::f64::consts::TAU {
        return Err(Error::InvalidArgument(format!(
            "grid upper end {} does not cover [0, 2π]",
            spec.upper
        )));
    }
    let m = f.dim();
    let total = spec.total_points(m);
    if total > 9_007_199_254_740_992.0 {
        return Err(Error::GridTooLarge(total));
    }
    let start = Instant::now();
    let compiled = f.compile();
    let k = spec.points_per_axis();
    let step = spec.step;

    let (max_sample, witness) = if m == 0 {
        (f.eval(&[]).norm(), vec![])
    } else {
        let u_table: Vec<C64> = (0..k).map(|q| C64::cis(q as f64 * step)).collect();
        let rows = k.pow(m as u32 - 1);
        let row_max: Vec<(f64, u64)> = (0..rows)
            .into_par_iter()
            .map_init(
                || (compiled.scratch(), Vec::new(), vec![0.0; m - 1]),
                |(scratch, coeffs, prefix), r| {
                    let mut rem = r;
                    for j in (0..m - 1).rev() {
                        prefix[j] = (rem % k) as f64 * step;
                        rem /= k;
                    }
                    compiled.collapse_last(prefix, scratch, coeffs);
                    let mut best = f64::NEG_INFINITY;
                    let mut arg = 0;
                    for (q, u) in u_table.iter().enumerate() {
                        let mut acc = C64::new(0.0, 0.0);
                        for a in coeffs.iter().rev() {
                            acc = acc * u + a;
                        }
                        let v = acc.norm();
                        if v > best {
                            best = v;
                            arg = q as u64;
                        }
                    }
                    (best, arg)
                },
            )
            .collect();
        let mut best = f64::NEG_INFINITY;
        let mut best_row = 0u64;
        let mut best_q = 0u64;
        for (r, &(v, q)) in row_max.iter().enumerate() {
            if v > best {
                best = v;
                best_row = r as u64;
                best_q = q;
            }
        }
        let mut w = vec![0.0; m];
        let mut rem = best_row;
        for j in (0..m - 1).rev() {
            w[j] = (rem % k) as f64 * step;
            rem /= k;
        }
        w[m - 1] = best_q as f64 * step;
        (best, w)
    };

    let upper_bound = max_sample + lipschitz * step / 2.0 + rounding_slack(&compiled, f.len());
    let conclusion = if upper_bound < tau {
        Conclusion::CertifiedBelow
    } else {
        Conclusion::Inconclusive
    };
    Ok(Certificate {
        mode: CertMode::Grid,
        lipschitz,
        tau: Some(tau),
        step: Some(step),
        boxes_explored: None,
        max_sample,
        upper_bound,
        witness,
        peaks: vec![],
        conclusion,
        evals: total as u64,
        diagnostics: None,
        wall_time_s: Some(start.elapsed().as_secs_f64()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_function() {
        let f = ExpSum::constant(2, C64::new(0.5, 0.0));
        let c = grid_certify(&f, 0.0, 1.0, 0.3).unwrap();
        assert!(c.is_certified_below());
        assert_eq!(c.max_sample, 0.5);
    }

    #[test]
    fn unimodular_function_is_inconclusive() {
        let f = ExpSum::from_terms(1, [(vec![1], C64::new(1.0, 0.0))]).unwrap();
        let c = grid_certify(&f, 1.0, 0.5, 0.1).unwrap();
        assert_eq!(c.conclusion, Conclusion::Inconclusive);
        assert!((c.max_sample - 1.0).abs() < 1e-15);
        assert!(f.eval(&c.witness).norm() >= 0.5);
    }

    #[test]
    fn reference_grid_size() {
        let g = GridSpec::reference();
        assert_eq!(g.points_per_axis(), 157_081);
        assert!((g.total_points(2) - 2.4674e10).abs() < 1e7);
        assert_eq!(GridSpec::covering(0.1).points_per_axis(), 64);
    }

    #[test]
    fn overflow_is_rejected_up_front() {
        let f = ExpSum::constant(6, C64::new(1.0, 0.0));
        assert!(matches!(grid_certify(&f, 0.0, 2.0, 1e-4), Err(Error::GridTooLarge(_))));
    }

    #[test]
    fn agrees_with_direct_evaluation() {
        let f = ExpSum::from_terms(
            2,
            [
                (vec![2, -1], C64::new(0.3, 0.1)),
                (vec![0, 1], C64::new(-0.5, 0.0)),
                (vec![1, 1], C64::new(0.0, 0.7)),
            ],
        )
        .unwrap();
        let step = 0.05;
        let c = grid_certify(&f, f.lipschitz_bound(), 10.0, step).unwrap();
        let k = GridSpec::covering(step).points_per_axis();
        let mut best = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                best = best.max(f.eval(&[a as f64 * step, b as f64 * step]).norm());
            }
        }
        assert!((best - c.max_sample).abs() < 1e-13);
        assert!((f.eval(&c.witness).norm() - c.max_sample).abs() < 1e-13);
    }
}
