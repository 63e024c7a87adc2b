use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::roots::polynomial_roots;
use super::SymPoint;
use crate::certopt::engine::{branch_and_bound, BbSettings, Objective, Outcome, Target};
use crate::{Error, Result, C64};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Inside,
    Boundary,
    Outside,
}

/// Classification of a point against `G_n`.
///
/// `kind` is determined by `margin` and `tolerance`: inside iff
/// `margin < −tolerance`, boundary iff `|margin| ≤ tolerance`, outside
/// otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub kind: VerdictKind,
    #[serde(with = "crate::numfmt::dec17")]
    pub margin: f64,
    #[serde(with = "crate::numfmt::dec17")]
    pub tolerance: f64,
    /// The denominator of `f_λ` has a zero in the closed unit disc.
    #[serde(default)]
    pub denominator_vanishes: bool,
}

impl MembershipVerdict {
    pub fn from_margin(margin: f64, tolerance: f64) -> Self {
        let kind = if margin < -tolerance {
            VerdictKind::Inside
        } else if margin <= tolerance {
            VerdictKind::Boundary
        } else {
            VerdictKind::Outside
        };
        Self {
            kind,
            margin,
            tolerance,
            denominator_vanishes: false,
        }
    }
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance > 0.0 && tolerance.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("tolerance {tolerance} must be positive")))
    }
}

/// Decide membership from the roots of `Xⁿ − z_1Xⁿ⁻¹ + … + (−1)ⁿz_n`;
/// the margin is `max |root| − 1`.
pub fn classify_point(z: &SymPoint, tolerance: f64) -> Result<MembershipVerdict> {
    check_tolerance(tolerance)?;
    let n = z.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty point".into()));
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(C64::new(1.0, 0.0));
    for j in 1..=n {
        let s = if j % 2 == 1 { -1.0 } else { 1.0 };
        coeffs.push(z.get(j) * s);
    }
    let roots = polynomial_roots(&coeffs)?;
    let rmax = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    Ok(MembershipVerdict::from_margin(rmax - 1.0, tolerance))
}

/// `|f_λ(z)|` on the unit circle `λ = e^{iθ}`, with an arc bound from the
/// derivative bounds of numerator and denominator.
struct CircleQuotient {
    num: Vec<C64>,
    den: Vec<C64>,
    num_lip: f64,
    den_lip: f64,
    slack: f64,
}

impl CircleQuotient {
    fn new(z: &SymPoint) -> Self {
        let n = z.n();
        // numerator Σ j z_j λ^{j−1}, denominator n + Σ (n−j) z_j λ^j
        let num: Vec<C64> = (1..=n).map(|j| z.get(j) * j as f64).collect();
        let mut den = vec![C64::new(n as f64, 0.0)];
        den.extend((1..n).map(|j| z.get(j) * (n - j) as f64));
        let lip = |c: &[C64]| c.iter().enumerate().map(|(k, a)| k as f64 * a.norm()).sum::<f64>();
        let scale: f64 = num.iter().chain(&den).map(|a| a.norm()).sum();
        Self {
            num_lip: lip(&num),
            den_lip: lip(&den),
            slack: 16.0 * f64::EPSILON * (n as f64 + 4.0) * scale,
            num,
            den,
        }
    }

    fn horner(c: &[C64], u: C64) -> C64 {
        c.iter().rev().fold(C64::zero(), |acc, a| acc * u + a)
    }
}

impl Objective for CircleQuotient {
    type Scratch = ();

    fn dim(&self) -> usize {
        1
    }

    fn scratch(&self) {}

    fn bound(&self, c: &[f64], h: &[f64], _: &mut ()) -> (f64, f64) {
        let u = C64::cis(c[0]);
        let nv = Self::horner(&self.num, u).norm();
        let dv = Self::horner(&self.den, u).norm();
        let value = if dv > 0.0 { nv / dv } else { f64::INFINITY };
        let lower_den = dv - self.den_lip * h[0] - self.slack;
        let ub = if lower_den > 0.0 {
            (nv + self.num_lip * h[0] + self.slack) / lower_den
        } else {
            f64::INFINITY
        };
        (value, ub)
    }
}

/// Decide membership through `sup_{|λ|≤1} |f_λ(z)| < 1`.
///
/// First the zeros of the denominator of `f_λ` are located; a zero in the
/// closed disc makes the verdict outside (or boundary, when the zero sits on
/// the circle within `tolerance`) with `denominator_vanishes` set and margin
/// `1 − min |zero|`. Otherwise `|f_λ|` is holomorphic on the disc and its
/// maximum on the circle is certified against `1 ∓ tolerance`; the margin is
/// the largest sampled value minus one.
pub fn membership_via_flambda(z: &SymPoint, samples: usize, tolerance: f64) -> Result<MembershipVerdict> {
    check_tolerance(tolerance)?;
    let n = z.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty point".into()));
    }
    if samples < 8 * n {
        return Err(Error::InvalidArgument(format!("need at least {} samples, got {samples}", 8 * n)));
    }
    let q = CircleQuotient::new(z);

    let mut hi_first: Vec<C64> = q.den.iter().rev().copied().collect();
    while hi_first.len() > 1 && hi_first[0].is_zero() {
        hi_first.remove(0);
    }
    if hi_first.len() > 1 {
        let zeros = polynomial_roots(&hi_first)?;
        let rmin = zeros.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
        if rmin <= 1.0 + tolerance {
            let mut v = MembershipVerdict::from_margin(1.0 - rmin, tolerance);
            v.denominator_vanishes = true;
            return Ok(v);
        }
    }

    let run = |tau: f64| {
        let mut s = BbSettings::torus(1, Target::Below(tau));
        s.initial_splits = samples;
        s.max_frontier = 1 << 24;
        branch_and_bound(&q, &s)
    };
    let undecided = |d: Option<String>| {
        Error::VerificationFailed(format!(
            "f_λ certification undecided: {}",
            d.unwrap_or_else(|| "no diagnostics".into())
        ))
    };

    let first = run(1.0 - tolerance);
    match first.outcome {
        Outcome::CertifiedBelow => Ok(MembershipVerdict::from_margin(first.best_value - 1.0, tolerance)),
        Outcome::WitnessAtOrAbove if first.best_value > 1.0 + tolerance => {
            Ok(MembershipVerdict::from_margin(first.best_value - 1.0, tolerance))
        }
        Outcome::WitnessAtOrAbove => {
            let second = run(1.0 + tolerance);
            let best = first.best_value.max(second.best_value);
            match second.outcome {
                Outcome::CertifiedBelow | Outcome::WitnessAtOrAbove => {
                    Ok(MembershipVerdict::from_margin(best - 1.0, tolerance))
                }
                _ => Err(undecided(second.diagnostics)),
            }
        }
        _ => Err(undecided(first.diagnostics)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(z: &[f64]) -> SymPoint {
        SymPoint::from_real(z)
    }

    #[test]
    fn classify_examples() {
        let v = classify_point(&pt(&[0.0, 0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(v.kind, VerdictKind::Inside);
        assert_eq!(v.margin, -1.0);
        let v = classify_point(&pt(&[3.0, 3.0, 1.0]), 1e-9).unwrap();
        assert_eq!(v.kind, VerdictKind::Boundary);
        assert!(v.margin.abs() < 1e-12);
        let v = classify_point(&pt(&[4.0, 0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(v.kind, VerdictKind::Outside);
        assert!((v.margin - 3.0).abs() < 1e-12);
    }

    #[test]
    fn flambda_examples() {
        let v = membership_via_flambda(&pt(&[0.0, 0.0, 0.0]), 24, 1e-9).unwrap();
        assert_eq!(v.kind, VerdictKind::Inside);
        let v = membership_via_flambda(&pt(&[3.0, 3.0, 1.0]), 24, 1e-9).unwrap();
        assert_ne!(v.kind, VerdictKind::Inside);
        let v = membership_via_flambda(&pt(&[4.0, 0.0, 0.0]), 24, 1e-9).unwrap();
        assert_eq!(v.kind, VerdictKind::Outside);
        let v = membership_via_flambda(&pt(&[0.5, 0.0]), 16, 1e-9).unwrap();
        assert_eq!(v.kind, VerdictKind::Inside);
    }

    #[test]
    fn too_few_samples() {
        assert!(membership_via_flambda(&pt(&[0.0, 0.0]), 15, 1e-9).is_err());
    }
}
