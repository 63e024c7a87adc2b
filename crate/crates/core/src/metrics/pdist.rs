//! Lower estimates of `max_λ p_D(f_λ(z), f_λ(w))` over `λ ∈ 𝕋^{n−1}`.

use rayon::prelude::*;
use serde::Serialize;

use super::basic::poincare;
use crate::numfmt::{dec17, dec17_vec};
use crate::symcore::{classify_point, f_multi, SymPoint, VerdictKind, DEFAULT_TOLERANCE};
use crate::{Error, Result, C64};

/// Grids stop growing beyond this many points.
pub const MAX_GRID_POINTS: usize = 1 << 22;

const START_PER_AXIS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PDistEstimate {
    /// Largest sampled distance; a lower bound for the true maximum.
    #[serde(with = "dec17")]
    pub value: f64,
    #[serde(with = "dec17_vec")]
    pub argmax: Vec<f64>,
    /// Estimate after each grid doubling, non-decreasing.
    #[serde(with = "dec17_vec")]
    pub history: Vec<f64>,
    pub points_per_axis: usize,
    pub converged: bool,
}

fn lambdas(angles: &[f64]) -> Vec<C64> {
    angles.iter().map(|&a| C64::cis(a)).collect()
}

fn distance_at(z: &SymPoint, w: &SymPoint, angles: &[f64]) -> Result<f64> {
    let l = lambdas(angles);
    poincare(f_multi(z, &l)?, f_multi(w, &l)?)
}

fn grid_angles(index: usize, per_axis: usize, m: usize) -> Vec<f64> {
    let mut a = vec![0.0; m];
    let mut r = index;
    for j in (0..m).rev() {
        a[j] = std::f64::consts::TAU * (r % per_axis) as f64 / per_axis as f64;
        r /= per_axis;
    }
    a
}

/// Every grid point of `per_axis^{n−1}` equispaced angles, in row-major order.
pub fn p_distance_sweep(z: &SymPoint, w: &SymPoint, per_axis: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    check_points(z, w)?;
    let m = z.n() - 1;
    let total = per_axis.checked_pow(m as u32).filter(|&t| t <= MAX_GRID_POINTS).ok_or_else(|| {
        Error::GridTooLarge((per_axis as f64).powi(m as i32))
    })?;
    (0..total)
        .into_par_iter()
        .map(|i| {
            let a = grid_angles(i, per_axis, m);
            distance_at(z, w, &a).map(|v| (a, v))
        })
        .collect()
}

fn check_points(z: &SymPoint, w: &SymPoint) -> Result<()> {
    if z.n() != w.n() {
        return Err(Error::DimensionMismatch { expected: z.n(), got: w.n() });
    }
    if z.n() == 0 {
        return Err(Error::InvalidArgument("empty point".into()));
    }
    for p in [z, w] {
        if classify_point(p, DEFAULT_TOLERANCE)?.kind != VerdictKind::Inside {
            return Err(Error::InvalidArgument(format!("point {:?} is not inside G_n", p.coords())));
        }
    }
    Ok(())
}

/// Maximum of the Poincaré distance between `f_λ(z)` and `f_λ(w)` over nested
/// uniform grids on `𝕋^{n−1}`, doubling the resolution until the estimate
/// improves by less than `refine_tol` or the grid exceeds
/// [`MAX_GRID_POINTS`]. No certificate is attached.
pub fn p_distance(z: &SymPoint, w: &SymPoint, refine_tol: f64) -> Result<PDistEstimate> {
    if !(refine_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {refine_tol} must be positive")));
    }
    check_points(z, w)?;
    let m = z.n() - 1;
    if m == 0 {
        let v = distance_at(z, w, &[])?;
        return Ok(PDistEstimate {
            value: v,
            argmax: vec![],
            history: vec![v],
            points_per_axis: 1,
            converged: true,
        });
    }
    let mut per_axis = START_PER_AXIS;
    let mut best = f64::NEG_INFINITY;
    let mut argmax = vec![0.0; m];
    let mut history = Vec::new();
    loop {
        let total = per_axis.pow(m as u32);
        let vals: Vec<f64> = (0..total)
            .into_par_iter()
            .map(|i| distance_at(z, w, &grid_angles(i, per_axis, m)))
            .collect::<Result<_>>()?;
        let mut level_best = f64::NEG_INFINITY;
        let mut level_arg = 0;
        for (i, &v) in vals.iter().enumerate() {
            if v > level_best {
                level_best = v;
                level_arg = i;
            }
        }
        let improvement = level_best - best;
        // the grid at this level contains the previous one
        if level_best > best {
            best = level_best;
            argmax = grid_angles(level_arg, per_axis, m);
        }
        history.push(best);
        if history.len() >= 2 && improvement < refine_tol {
            return Ok(PDistEstimate {
                value: best,
                argmax,
                history,
                points_per_axis: per_axis,
                converged: true,
            });
        }
        let next = per_axis * 2;
        if next.checked_pow(m as u32).is_none_or(|t| t > MAX_GRID_POINTS) {
            return Ok(PDistEstimate {
                value: best,
                argmax,
                history,
                points_per_axis: per_axis,
                converged: false,
            });
        }
        per_axis = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_distance_to_itself() {
        let z = SymPoint::from_real(&[0.3, 0.1, 0.0]);
        let d = p_distance(&z, &z, 1e-6).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn history_is_monotone() {
        let z = SymPoint::zero(3);
        let w = SymPoint::new(vec![C64::new(0.2, 0.1), C64::new(-0.1, 0.0), C64::new(0.05, 0.02)]);
        let d = p_distance(&z, &w, 1e-8).unwrap();
        assert!(d.history.windows(2).all(|p| p[0] <= p[1]));
        for (a, v) in p_distance_sweep(&z, &w, 8).unwrap() {
            assert!(v <= d.value);
            let l: Vec<C64> = a.iter().map(|&t| C64::cis(t)).collect();
            assert!(v >= f_multi(&w, &l).unwrap().norm().atanh() - 1e-15);
        }
    }

    #[test]
    fn outside_point_rejected() {
        let z = SymPoint::zero(2);
        let w = SymPoint::from_real(&[3.0, 0.0]);
        assert!(p_distance(&z, &w, 1e-6).is_err());
    }
}
