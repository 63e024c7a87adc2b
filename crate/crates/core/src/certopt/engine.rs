//! Deterministic branch-and-bound over axis-aligned boxes.
//!
//! Boxes are processed in blocks: every box of a block is bounded in parallel
//! (order-preserving collect), then the incumbent, the pruning decisions and
//! the children are computed sequentially in block order. Children form a new
//! block that is split into bounded pieces and processed before older pending
//! blocks, which keeps memory proportional to the depth of the search. The
//! processing order never depends on the number of worker threads, so neither
//! do the results.

use rayon::prelude::*;

/// A function whose modulus is maximized, together with a box bound.
pub trait Objective: Sync {
    type Scratch: Send;

    fn dim(&self) -> usize;

    fn scratch(&self) -> Self::Scratch;

    /// `(|F(center)|, upper bound of |F| on the box center ± half)`.
    fn bound(&self, center: &[f64], half: &[f64], scratch: &mut Self::Scratch) -> (f64, f64);
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    /// Prove `|F| < τ` everywhere or find a point with `|F| ≥ τ`.
    Below(f64),
    /// Bracket the maximum to within `tol`.
    Maximize { tol: f64 },
}

#[derive(Clone, Debug)]
pub struct PeakSettings {
    /// Samples closer than this (max-metric, modulo 2π) share a peak.
    pub radius: f64,
    /// Peaks more than this below the final maximum are discarded.
    pub delta: f64,
}

#[derive(Clone, Debug)]
pub struct BbSettings {
    pub target: Target,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub initial_splits: usize,
    pub max_frontier: usize,
    pub min_half: f64,
    pub peaks: Option<PeakSettings>,
    pub symmetry: AngleSymmetry,
}

/// Symmetries of `|F|` used to shrink the search domain.
///
/// The coordinates are read as angles of `m` points on the circle, with an
/// extra point pinned at angle 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AngleSymmetry {
    #[default]
    None,
    /// Invariant under permutations of the coordinates: search
    /// `x_1 ≤ … ≤ x_m`.
    Sorted,
    /// Also invariant under rotating all `m + 1` points: additionally the gap
    /// from the pinned point to `x_1` is the largest.
    Circular,
    /// Also invariant under `x ↦ −x`: additionally the second gap is at
    /// least the last one.
    CircularReflect,
}

impl AngleSymmetry {
    /// Whether the box `center ± half` may meet the reduced domain. Never
    /// false for a box that meets it.
    pub fn meets(self, center: &[f64], half: &[f64]) -> bool {
        if self == AngleSymmetry::None {
            return true;
        }
        let mut x = f64::NEG_INFINITY;
        for (c, h) in center.iter().zip(half) {
            x = x.max(c - h);
            if x > c + h {
                return false;
            }
        }
        if self == AngleSymmetry::Sorted {
            return true;
        }
        let m = center.len();
        let lo = |j: usize| center[j] - half[j];
        let hi = |j: usize| center[j] + half[j];
        let tau = std::f64::consts::TAU;
        if hi(0) + hi(m - 1) < tau {
            return false;
        }
        for j in 0..m - 1 {
            let first = if j == 0 { 2.0 * hi(0) } else { hi(0) + hi(j) };
            if first < lo(j + 1) {
                return false;
            }
        }
        if self == AngleSymmetry::CircularReflect && m >= 2 && hi(1) - lo(0) + hi(m - 1) < tau {
            return false;
        }
        true
    }
}

impl BbSettings {
    pub fn torus(m: usize, target: Target) -> Self {
        Self {
            target,
            lo: vec![0.0; m],
            hi: vec![std::f64::consts::TAU; m],
            initial_splits: default_splits(m),
            max_frontier: 10_000_000,
            min_half: 1e-13,
            peaks: None,
            symmetry: AngleSymmetry::None,
        }
    }
}

/// Roughly 4096 initial boxes, at most 16 per axis.
pub fn default_splits(m: usize) -> usize {
    if m == 0 {
        return 1;
    }
    ((4096f64).powf(1.0 / m as f64).floor() as usize).clamp(1, 16)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    CertifiedBelow,
    WitnessAtOrAbove,
    Bracketed,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct BbResult {
    pub outcome: Outcome,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    pub upper_bound: f64,
    pub boxes_explored: u64,
    pub peaks: Vec<(Vec<f64>, f64)>,
    pub diagnostics: Option<String>,
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

fn periodic_dist(a: &[f64], b: &[f64]) -> f64 {
    let tau = std::f64::consts::TAU;
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(tau);
            d.min(tau - d)
        })
        .fold(0.0, f64::max)
}

/// Boxes bounded in one parallel pass.
const CHUNK: usize = 1 << 18;

/// Push `boxes` in pieces of at most `CHUNK` boxes so that the first piece
/// is popped first.
fn push_chunks(stack: &mut Vec<Vec<f64>>, boxes: Vec<f64>, stride: usize) {
    if boxes.is_empty() {
        return;
    }
    let per = CHUNK * stride;
    if boxes.len() <= per {
        stack.push(boxes);
        return;
    }
    let pieces: Vec<Vec<f64>> = boxes.chunks(per).map(|c| c.to_vec()).collect();
    stack.extend(pieces.into_iter().rev());
}

pub fn branch_and_bound<O: Objective>(obj: &O, settings: &BbSettings) -> BbResult {
    let m = obj.dim();
    assert!(m >= 1, "branch-and-bound needs at least one dimension");
    assert_eq!(settings.lo.len(), m);
    assert_eq!(settings.hi.len(), m);
    let stride = 2 * m;

    // initial generation: a regular grid of boxes
    let s = settings.initial_splits.max(1);
    let mut frontier: Vec<f64> = Vec::with_capacity(s.pow(m as u32) * stride);
    let widths: Vec<f64> = (0..m).map(|j| (settings.hi[j] - settings.lo[j]) / s as f64).collect();
    let count = s.pow(m as u32);
    for idx in 0..count {
        let mut r = idx;
        let mut digits = vec![0usize; m];
        for j in (0..m).rev() {
            digits[j] = r % s;
            r /= s;
        }
        let center: Vec<f64> = (0..m).map(|j| settings.lo[j] + (digits[j] as f64 + 0.5) * widths[j]).collect();
        let half: Vec<f64> = widths.iter().map(|w| 0.5 * w).collect();
        if !settings.symmetry.meets(&center, &half) {
            continue;
        }
        frontier.extend(center);
        frontier.extend(half);
    }

    let mut best_value = f64::NEG_INFINITY;
    let mut best_point: Vec<f64> = Vec::new();
    let mut pruned_ub = f64::NEG_INFINITY;
    let mut explored: u64 = 0;
    let mut peaks: Vec<(Vec<f64>, f64)> = Vec::new();

    let finish = |outcome, best_value, best_point, upper_bound, explored, peaks: Vec<(Vec<f64>, f64)>, diag| {
        let peaks = match &settings.peaks {
            Some(ps) => {
                let mut p: Vec<(Vec<f64>, f64)> =
                    peaks.into_iter().filter(|(_, v)| *v >= best_value - ps.delta).collect();
                p.sort_by(|a, b| {
                    if lex_less(&a.0, &b.0) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                });
                p
            }
            None => Vec::new(),
        };
        BbResult {
            outcome,
            best_value,
            best_point,
            upper_bound,
            boxes_explored: explored,
            peaks,
            diagnostics: diag,
        }
    };

    let mut stack: Vec<Vec<f64>> = Vec::new();
    let mut pending = frontier.len() / stride;
    push_chunks(&mut stack, frontier, stride);

    while let Some(block) = stack.pop() {
        pending -= block.len() / stride;
        let bounds: Vec<(f64, f64)> = block
            .par_chunks(stride)
            .map_init(|| obj.scratch(), |sc, b| obj.bound(&b[..m], &b[m..], sc))
            .collect();
        explored += bounds.len() as u64;

        for (i, &(v, _)) in bounds.iter().enumerate() {
            let c = &block[i * stride..i * stride + m];
            if v > best_value || (v == best_value && lex_less(c, &best_point)) {
                best_value = v;
                best_point = c.to_vec();
            }
            if let Some(ps) = &settings.peaks {
                if v >= best_value - ps.delta {
                    match peaks.iter_mut().find(|(p, _)| periodic_dist(p, c) < ps.radius) {
                        Some(peak) => {
                            if v > peak.1 || (v == peak.1 && lex_less(c, &peak.0)) {
                                *peak = (c.to_vec(), v);
                            }
                        }
                        None => peaks.push((c.to_vec(), v)),
                    }
                }
            }
        }
        if let Some(ps) = &settings.peaks {
            peaks.retain(|(_, v)| *v >= best_value - ps.delta);
        }

        if let Target::Below(tau) = settings.target {
            if best_value >= tau {
                return finish(
                    Outcome::WitnessAtOrAbove,
                    best_value,
                    best_point,
                    f64::INFINITY,
                    explored,
                    peaks,
                    None,
                );
            }
        }

        let mut next: Vec<f64> = Vec::new();
        for (i, &(_, ub)) in bounds.iter().enumerate() {
            let keep = match settings.target {
                Target::Below(tau) => ub >= tau,
                Target::Maximize { tol } => ub > best_value + tol,
            };
            if !keep {
                pruned_ub = pruned_ub.max(ub);
                continue;
            }
            let b = &block[i * stride..(i + 1) * stride];
            let (center, half) = b.split_at(m);
            let mut axis = 0;
            for j in 1..m {
                if half[j] > half[axis] {
                    axis = j;
                }
            }
            if half[axis] < settings.min_half {
                return finish(
                    Outcome::Inconclusive,
                    best_value,
                    best_point,
                    f64::INFINITY,
                    explored,
                    peaks,
                    Some(format!("box half-width below {:e} without a decision", settings.min_half)),
                );
            }
            let h = 0.5 * half[axis];
            for sign in [-1.0, 1.0] {
                if settings.symmetry != AngleSymmetry::None {
                    let mut c = center.to_vec();
                    let mut hh = half.to_vec();
                    c[axis] += sign * h;
                    hh[axis] = h;
                    if !settings.symmetry.meets(&c, &hh) {
                        continue;
                    }
                }
                for j in 0..m {
                    next.push(if j == axis { center[j] + sign * h } else { center[j] });
                }
                for j in 0..m {
                    next.push(if j == axis { h } else { half[j] });
                }
            }
        }
        pending += next.len() / stride;
        if pending > settings.max_frontier {
            return finish(
                Outcome::Inconclusive,
                best_value,
                best_point,
                f64::INFINITY,
                explored,
                peaks,
                Some(format!(
                    "{} pending boxes exceed the cap of {}",
                    pending, settings.max_frontier
                )),
            );
        }
        push_chunks(&mut stack, next, stride);
    }

    let (outcome, upper) = match settings.target {
        Target::Below(_) => (Outcome::CertifiedBelow, pruned_ub),
        Target::Maximize { .. } => (Outcome::Bracketed, pruned_ub.max(best_value)),
    };
    finish(outcome, best_value, best_point, upper, explored, peaks, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// |1 − x²| on [−1, 2] with a crude Lipschitz bound.
    struct Parabola;

    impl Objective for Parabola {
        type Scratch = ();
        fn dim(&self) -> usize {
            1
        }
        fn scratch(&self) {}
        fn bound(&self, c: &[f64], h: &[f64], _: &mut ()) -> (f64, f64) {
            let v = (1.0 - c[0] * c[0]).abs();
            (v, v + 4.0 * h[0])
        }
    }

    fn settings(target: Target) -> BbSettings {
        BbSettings {
            target,
            lo: vec![-1.0],
            hi: vec![2.0],
            initial_splits: 3,
            max_frontier: 1_000_000,
            min_half: 1e-13,
            peaks: None,
            symmetry: AngleSymmetry::None,
        }
    }

    #[test]
    fn brackets_maximum() {
        let r = branch_and_bound(&Parabola, &settings(Target::Maximize { tol: 1e-9 }));
        assert_eq!(r.outcome, Outcome::Bracketed);
        assert!((r.best_value - 3.0).abs() < 1e-8);
        assert!(r.upper_bound >= 3.0 && r.upper_bound <= r.best_value + 1e-9);
    }

    #[test]
    fn threshold_modes() {
        let r = branch_and_bound(&Parabola, &settings(Target::Below(3.01)));
        assert_eq!(r.outcome, Outcome::CertifiedBelow);
        assert!(r.upper_bound < 3.01);
        let r = branch_and_bound(&Parabola, &settings(Target::Below(2.5)));
        assert_eq!(r.outcome, Outcome::WitnessAtOrAbove);
        assert!(r.best_value >= 2.5);
    }

    #[test]
    fn frontier_cap_is_reported() {
        let mut s = settings(Target::Maximize { tol: 1e-12 });
        s.max_frontier = 4;
        let r = branch_and_bound(&Parabola, &s);
        assert_eq!(r.outcome, Outcome::Inconclusive);
        assert!(r.diagnostics.unwrap().contains("cap"));
    }
}
