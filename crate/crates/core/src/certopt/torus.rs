//! Branch-and-bound for `|F|` with `F` an exponential sum on `[0, 2π]^m`.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use super::certificate::{CertMode, Certificate, Conclusion, Peak};
use super::engine::{branch_and_bound, default_splits, AngleSymmetry, BbSettings, Objective, Outcome, PeakSettings, Target};
use crate::polyalg::{CompiledExpSum, ExpSum};
use crate::{Error, Result, C64};

/// How a box bound is formed from data at the box center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `|F(c)| + L·max_j h_j`.
    Lipschitz,
    /// Minimum of the Lipschitz bound and the linearization at the center,
    /// maximized over the box vertices, plus the second-order remainder.
    SecondOrder,
}

#[derive(Clone, Debug)]
pub struct BbOptions {
    pub bound: BoundKind,
    pub max_frontier: usize,
    pub initial_splits: Option<usize>,
    pub peaks: Option<PeakSettings>,
    /// Run a local ascent from the best sample when maximizing.
    pub polish: bool,
    /// Symmetries of `|F|` that shrink the searched domain. Checked at a few
    /// points before the search.
    pub symmetry: AngleSymmetry,
}

impl Default for BbOptions {
    fn default() -> Self {
        Self {
            bound: BoundKind::SecondOrder,
            max_frontier: 10_000_000,
            initial_splits: None,
            peaks: None,
            polish: true,
            symmetry: AngleSymmetry::None,
        }
    }
}

impl BbOptions {
    /// Center value plus `L·halfwidth`, nothing else.
    pub fn lipschitz_only() -> Self {
        Self {
            bound: BoundKind::Lipschitz,
            polish: false,
            ..Self::default()
        }
    }
}

fn looks_symmetric(f: &CompiledExpSum, symmetry: AngleSymmetry) -> bool {
    let m = f.dim();
    let tau = std::f64::consts::TAU;
    let scale = f.crude_bound().max(1.0);
    let mut sc = f.scratch();
    let mut eval = |x: &[f64]| f.value(x, &mut sc).norm();
    let mut images: Vec<Box<dyn Fn(&[f64]) -> Vec<f64>>> = Vec::new();
    if symmetry != AngleSymmetry::None {
        for j in 0..m.saturating_sub(1) {
            images.push(Box::new(move |x: &[f64]| {
                let mut y = x.to_vec();
                y.swap(j, j + 1);
                y
            }));
        }
    }
    if matches!(symmetry, AngleSymmetry::Circular | AngleSymmetry::CircularReflect) {
        images.push(Box::new(move |x: &[f64]| {
            let mut y: Vec<f64> = x[1..].iter().map(|v| (v - x[0]).rem_euclid(tau)).collect();
            y.push((tau - x[0]).rem_euclid(tau));
            y
        }));
    }
    if symmetry == AngleSymmetry::CircularReflect {
        images.push(Box::new(|x: &[f64]| x.iter().map(|v| (tau - v).rem_euclid(tau)).collect()));
    }
    (0..4).all(|s| {
        let x: Vec<f64> = (0..m)
            .map(|j| (0.7 * ((j + 1) * (j + 2 + s)) as f64 + 0.3).rem_euclid(tau))
            .collect();
        let v = eval(&x);
        images.iter().all(|g| (eval(&g(&x)) - v).abs() <= 1e-9 * scale)
    })
}

/// Allowance for floating-point error in one evaluation of `F`.
pub fn rounding_slack(f: &CompiledExpSum, terms: usize) -> f64 {
    16.0 * f64::EPSILON * (terms + f.dim() + 8) as f64 * f.crude_bound().max(1.0)
}

pub struct TorusObjective<'a> {
    f: &'a CompiledExpSum,
    lipschitz: f64,
    kind: BoundKind,
    slack: f64,
}

impl<'a> TorusObjective<'a> {
    pub fn new(f: &'a CompiledExpSum, lipschitz: f64, kind: BoundKind, terms: usize) -> Self {
        Self {
            f,
            lipschitz,
            kind,
            slack: rounding_slack(f, terms),
        }
    }
}

impl Objective for TorusObjective<'_> {
    type Scratch = (Vec<C64>, Vec<C64>);

    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn scratch(&self) -> Self::Scratch {
        (self.f.scratch(), vec![C64::new(0.0, 0.0); self.f.dim()])
    }

    fn bound(&self, c: &[f64], h: &[f64], s: &mut Self::Scratch) -> (f64, f64) {
        let hmax = h.iter().copied().fold(0.0, f64::max);
        match self.kind {
            BoundKind::Lipschitz => {
                let v = self.f.value(c, &mut s.0).norm();
                (v, v + self.lipschitz * hmax + self.slack)
            }
            BoundKind::SecondOrder => {
                let (table, grad) = s;
                let val = self.f.value_grad(c, table, grad);
                let v = val.norm();
                let m = c.len();
                let mut lin = 0.0f64;
                for mask in 0..(1usize << m) {
                    let mut w = val;
                    for j in 0..m {
                        let d = if mask >> j & 1 == 1 { h[j] } else { -h[j] };
                        w += grad[j] * d;
                    }
                    lin = lin.max(w.norm());
                }
                let second = lin + self.f.second_order_remainder(h);
                let first = v + self.lipschitz * hmax;
                (v, first.min(second) + self.slack)
            }
        }
    }
}

fn normalize(theta: &mut [f64]) {
    let tau = std::f64::consts::TAU;
    for t in theta {
        *t = t.rem_euclid(tau);
        if *t >= tau {
            *t = 0.0;
        }
    }
}

/// Newton ascent on `|F|²`, falling back to gradient steps. Returns the
/// improved point and value when it beats `start_value`.
pub fn polish_max(f: &CompiledExpSum, start: &[f64], start_value: f64) -> Option<(Vec<f64>, f64)> {
    let m = f.dim();
    let mut scratch = f.scratch();
    let mut grad = vec![C64::new(0.0, 0.0); m];
    let mut hess = vec![C64::new(0.0, 0.0); m * m];
    let mut x = start.to_vec();
    let mut fx = start_value * start_value;
    for _ in 0..60 {
        let v = f.value_grad_hess(&x, &mut scratch, &mut grad, &mut hess);
        // φ = |F|², ∂φ = 2 Re(F̄ ∂F), ∂²φ = 2 Re(∂F̄ ∂F + F̄ ∂²F)
        let g = DVector::from_fn(m, |j, _| 2.0 * (v.conj() * grad[j]).re);
        if g.amax() < 1e-15 * (1.0 + fx) {
            break;
        }
        let hm = DMatrix::from_fn(m, m, |j, l| {
            2.0 * (grad[j].conj() * grad[l] + v.conj() * hess[j * m + l]).re
        });
        let mut step = match (-hm).lu().solve(&g) {
            Some(d) if d.dot(&g) > 0.0 => d,
            _ => g.clone() / (1.0 + g.norm()),
        };
        let mut improved = false;
        for _ in 0..40 {
            let cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let fc = f.value(&cand, &mut scratch).norm_sqr();
            if fc > fx {
                x = cand;
                fx = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    normalize(&mut x);
    let value = f.value(&x, &mut scratch).norm();
    (value > start_value).then_some((x, value))
}

/// Maximize `|F|` over `[0, 2π]^m` by branch-and-bound.
///
/// With `tau = None` the maximum is bracketed to within `tol`. With
/// `tau = Some(τ)` and `tol = 0` the run only decides `max |F| < τ` (certified
/// below, or a witness with `|F| ≥ τ`). With both, the maximum is bracketed
/// and then compared with `τ`, which also yields an accurate observed maximum.
pub fn bb_maximize(
    f: &ExpSum,
    lipschitz: f64,
    tau: Option<f64>,
    tol: f64,
    opts: &BbOptions,
) -> Result<Certificate> {
    let m = f.dim();
    if !(lipschitz >= 0.0) {
        return Err(Error::InvalidArgument(format!("Lipschitz constant {lipschitz} must be non-negative")));
    }
    if !(tol >= 0.0) || (tau.is_none() && tol == 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let start = Instant::now();
    let compiled = f.compile();
    if m == 0 {
        let v = f.eval(&[]).norm();
        let conclusion = match tau {
            Some(t) if v < t => Conclusion::CertifiedBelow,
            Some(_) => Conclusion::WitnessAtOrAbove,
            None => Conclusion::MaximumBracketed,
        };
        return Ok(Certificate {
            mode: CertMode::BranchBound,
            lipschitz,
            tau,
            step: None,
            boxes_explored: Some(0),
            max_sample: v,
            upper_bound: v,
            witness: vec![],
            peaks: vec![],
            conclusion,
            evals: 1,
            diagnostics: None,
            wall_time_s: Some(start.elapsed().as_secs_f64()),
        });
    }
    if !looks_symmetric(&compiled, opts.symmetry) {
        return Err(Error::InvalidArgument(format!(
            "|F| does not have the requested symmetry {:?}",
            opts.symmetry
        )));
    }
    let obj = TorusObjective::new(&compiled, lipschitz, opts.bound, f.len());
    let target = match tau {
        Some(t) if tol == 0.0 => Target::Below(t),
        _ => Target::Maximize { tol },
    };
    let mut settings = BbSettings::torus(m, target);
    settings.max_frontier = opts.max_frontier;
    settings.initial_splits = opts.initial_splits.unwrap_or_else(|| default_splits(m));
    settings.peaks = opts.peaks.clone();
    settings.symmetry = opts.symmetry;
    let r = branch_and_bound(&obj, &settings);

    let mut witness = r.best_point.clone();
    normalize(&mut witness);
    let mut max_sample = r.best_value;
    let mut evals = r.boxes_explored;
    if opts.polish && r.outcome == Outcome::Bracketed {
        evals += 1;
        if let Some((x, v)) = polish_max(&compiled, &witness, max_sample) {
            witness = x;
            max_sample = v;
        }
    }
    let upper_bound = if r.upper_bound.is_finite() {
        r.upper_bound.max(max_sample)
    } else {
        r.upper_bound
    };
    let conclusion = match (r.outcome, tau) {
        (Outcome::CertifiedBelow, _) => Conclusion::CertifiedBelow,
        (Outcome::WitnessAtOrAbove, _) => Conclusion::WitnessAtOrAbove,
        (Outcome::Bracketed, None) => Conclusion::MaximumBracketed,
        (Outcome::Bracketed, Some(t)) if upper_bound < t => Conclusion::CertifiedBelow,
        (Outcome::Bracketed, Some(t)) if max_sample >= t => Conclusion::WitnessAtOrAbove,
        (Outcome::Bracketed, Some(_)) | (Outcome::Inconclusive, _) => Conclusion::Inconclusive,
    };
    Ok(Certificate {
        mode: CertMode::BranchBound,
        lipschitz,
        tau,
        step: None,
        boxes_explored: Some(r.boxes_explored),
        max_sample,
        upper_bound,
        witness,
        peaks: r
            .peaks
            .into_iter()
            .map(|(mut angles, value)| {
                normalize(&mut angles);
                Peak { angles, value }
            })
            .collect(),
        conclusion,
        evals,
        diagnostics: r.diagnostics,
        wall_time_s: Some(start.elapsed().as_secs_f64()),
    })
}
