//! Critical points of the three-angle trigonometric function
//! `h(α,β,γ) = (1−2c)(cos(α+β)+cos(β+γ)+cos(γ+α)) − c(cos2α+cos2β+cos2γ)`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numfmt::{dec17, dec17_vec};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// Sorted representative in `[0, 2π)³`.
    #[serde(with = "dec17_vec")]
    pub angles: Vec<f64>,
    #[serde(with = "dec17")]
    pub value: f64,
    #[serde(with = "dec17")]
    pub grad_norm: f64,
    /// Every coordinate is a multiple of π.
    pub lattice: bool,
}

pub fn h_value(c: f64, x: &[f64; 3]) -> f64 {
    let [a, b, g] = *x;
    (1.0 - 2.0 * c) * ((a + b).cos() + (b + g).cos() + (g + a).cos())
        - c * ((2.0 * a).cos() + (2.0 * b).cos() + (2.0 * g).cos())
}

fn h_grad_hess(c: f64, x: &[f64; 3]) -> (Vector3<f64>, Matrix3<f64>) {
    let k = 1.0 - 2.0 * c;
    let pair = |i: usize, j: usize| x[i] + x[j];
    let mut g = Vector3::zeros();
    let mut h = Matrix3::zeros();
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        g[i] = -k * (pair(i, j).sin() + pair(i, l).sin()) + 2.0 * c * (2.0 * x[i]).sin();
        h[(i, i)] = -k * (pair(i, j).cos() + pair(i, l).cos()) + 4.0 * c * (2.0 * x[i]).cos();
        h[(i, j)] = -k * pair(i, j).cos();
        h[(j, i)] = h[(i, j)];
    }
    (g, h)
}

fn canonical(x: &[f64; 3]) -> [f64; 3] {
    let mut y = x.map(|t| {
        let r = t.rem_euclid(TAU);
        if TAU - r < 1e-9 || r < 1e-12 {
            0.0
        } else {
            r
        }
    });
    y.sort_by(f64::total_cmp);
    y
}

fn newton(c: f64, seed: [f64; 3], tol: f64) -> Option<([f64; 3], f64)> {
    let mut x = seed;
    for _ in 0..100 {
        let (g, h) = h_grad_hess(c, &x);
        let gn = g.norm();
        if gn <= tol {
            return Some((x, gn));
        }
        let step = h.lu().solve(&g)?;
        if !step.iter().all(|s| s.is_finite()) {
            return None;
        }
        for i in 0..3 {
            x[i] -= step[i];
        }
    }
    let (g, _) = h_grad_hess(c, &x);
    (g.norm() <= tol).then_some((x, g.norm()))
}

/// Multi-start Newton on `∇h = 0` from a `grid_n³` lattice of seeds.
/// Converged points are reduced modulo 2π and coordinate permutation.
pub fn critical_scan(c: f64, grid_n: usize, newton_tol: f64) -> Result<Vec<CriticalPoint>> {
    if grid_n < 16 {
        return Err(Error::InvalidArgument(format!("grid_n = {grid_n} must be at least 16")));
    }
    if !(newton_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {newton_tol} must be positive")));
    }
    let n3 = grid_n * grid_n * grid_n;
    let found: Vec<Option<([f64; 3], f64)>> = (0..n3)
        .into_par_iter()
        .map(|s| {
            let seed = [s / (grid_n * grid_n), (s / grid_n) % grid_n, s % grid_n]
                .map(|i| i as f64 * TAU / grid_n as f64);
            newton(c, seed, newton_tol)
        })
        .collect();

    let mut uniq: BTreeMap<[i64; 3], CriticalPoint> = BTreeMap::new();
    for (x, gn) in found.into_iter().flatten() {
        let y = canonical(&x);
        let key = y.map(|t| (t * 1e7).round() as i64 % (TAU * 1e7).round() as i64);
        uniq.entry(key).or_insert_with(|| CriticalPoint {
            angles: y.to_vec(),
            value: h_value(c, &y),
            grad_norm: gn,
            lattice: y.iter().all(|t| {
                let r = t / PI;
                (r - r.round()).abs() < 1e-8
            }),
        });
    }
    Ok(uniq.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_matches_finite_differences() {
        let c = 0.3;
        let x = [0.4, 1.7, -2.2];
        let (g, h) = h_grad_hess(c, &x);
        let e = 1e-6;
        for i in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += e;
            xm[i] -= e;
            let fd = (h_value(c, &xp) - h_value(c, &xm)) / (2.0 * e);
            assert!((fd - g[i]).abs() < 1e-8);
            let (gp, _) = h_grad_hess(c, &xp);
            let (gm, _) = h_grad_hess(c, &xm);
            for j in 0..3 {
                assert!(((gp[j] - gm[j]) / (2.0 * e) - h[(i, j)]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn lattice_points_are_critical() {
        let pts = critical_scan(0.2, 16, 1e-10).unwrap();
        assert!(pts.iter().any(|p| p.lattice && p.angles == vec![0.0, 0.0, 0.0]));
        assert!(pts.iter().all(|p| p.grad_norm <= 1e-10));
    }
}
