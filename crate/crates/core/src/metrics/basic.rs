use serde::{Deserialize, Serialize};

use crate::certopt::{bb_maximize, BbOptions, Certificate};
use crate::numfmt::{dec17, dec17_opt};
use crate::polyalg::ExpSum;
use crate::{Error, Result, C64};

/// A tangent vector `X = Σ X_j e_j` at a point of `G_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionVector {
    x: Vec<C64>,
}

impl DirectionVector {
    pub fn new(x: Vec<C64>) -> Self {
        Self { x }
    }

    /// The unit vector `e_k`, 1-based.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[k - 1] = C64::new(1.0, 0.0);
        Self { x }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn coords(&self) -> &[C64] {
        &self.x
    }

    /// `X_j`, 1-based.
    pub fn get(&self, j: usize) -> C64 {
        self.x[j - 1]
    }

    /// 1-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.get(j) != C64::new(0.0, 0.0)).collect()
    }
}

pub const RHO_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoReport {
    pub n: usize,
    #[serde(with = "dec17")]
    pub value: f64,
    /// `(k|X_k| + l|X_l|)/n` when `X` has at most two nonzero entries.
    #[serde(with = "dec17_opt")]
    pub closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// `max_{|λ|=1} |Σ j X_j λ^{j−1}| / n`, certified to `1e-10` by a 1-D
/// branch-and-bound; on two-index supports the closed form is returned after
/// cross-checking.
pub fn rho(n: usize, x: &DirectionVector) -> Result<f64> {
    rho_detailed(n, x).map(|r| r.value)
}

pub fn rho_detailed(n: usize, x: &DirectionVector) -> Result<RhoReport> {
    if x.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.n() });
    }
    let support = x.support();
    if support.is_empty() {
        return Ok(RhoReport {
            n,
            value: 0.0,
            closed_form: Some(0.0),
            certificate: None,
        });
    }
    let f = ExpSum::from_terms(
        1,
        support
            .iter()
            .map(|&j| (vec![j as i32 - 1], x.get(j) * (j as f64 / n as f64))),
    )?;
    let cert = bb_maximize(&f, f.lipschitz_bound(), None, RHO_TOLERANCE, &BbOptions::default())?;
    let closed_form = (support.len() <= 2)
        .then(|| support.iter().map(|&j| j as f64 * x.get(j).norm()).sum::<f64>() / n as f64);
    let value = match closed_form {
        Some(v) => {
            if (v - cert.max_sample).abs() > 1e-9 {
                return Err(Error::VerificationFailed(format!(
                    "two-index closed form {v} disagrees with certified maximum {}",
                    cert.max_sample
                )));
            }
            v
        }
        None => cert.max_sample,
    };
    Ok(RhoReport {
        n,
        value,
        closed_form,
        certificate: Some(cert),
    })
}

/// Poincaré distance `tanh⁻¹ |(a − b)/(1 − āb)|` on the unit disc.
pub fn poincare(a: C64, b: C64) -> Result<f64> {
    for v in [a, b] {
        if !(v.norm() < 1.0) {
            return Err(Error::OutsideDisc(v.norm()));
        }
    }
    let m = ((a - b) / (C64::new(1.0, 0.0) - a.conj() * b)).norm();
    Ok(m.min(1.0).atanh())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KappaSandwich {
    #[serde(with = "dec17")]
    pub rho_lower: f64,
    #[serde(with = "dec17")]
    pub kappa_upper: f64,
}

/// `k/n ≤ γ(0; e_k) ≤ κ(0; e_k) ≤ 1/⌊n/k⌋`.
pub fn kappa_sandwich(n: usize, k: usize) -> Result<KappaSandwich> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(KappaSandwich {
        rho_lower: k as f64 / n as f64,
        kappa_upper: 1.0 / (n / k) as f64,
    })
}
