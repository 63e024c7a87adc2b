//! The symmetrization map `σ_n`, membership in `G_n = σ_n(D^n)`, the rational
//! maps `p_{n,λ}` and `f_λ`, and the Taylor extraction of the polynomials
//! `P_k`.
//!
//! A point `z ∈ ℂⁿ` lies in `G_n` exactly when every root of
//! `Xⁿ − z_1Xⁿ⁻¹ + z_2Xⁿ⁻² − … + (−1)ⁿz_n` lies in the open unit disc; with
//! this sign convention [`sym_map`] and the root extraction in
//! [`classify_point`] are mutually inverse on root multisets.

mod maps;
mod membership;
pub mod roots;

use serde::{Deserialize, Serialize};

pub use maps::{f_lambda, f_multi, gz_taylor, p_reduce, pk_polynomial, sym_map, DEGENERATE_CUTOFF};
pub use membership::{classify_point, membership_via_flambda, VerdictKind, MembershipVerdict, DEFAULT_TOLERANCE};

use crate::{Error, Result, C64};

/// A point of `ℂⁿ` in symmetrized coordinates; `z_j` plays the role of
/// `σ_{n,j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymPoint {
    z: Vec<C64>,
}

impl SymPoint {
    pub fn new(z: Vec<C64>) -> Self {
        assert!(!z.is_empty(), "SymPoint needs n >= 1");
        Self { z }
    }

    pub fn from_real(z: &[f64]) -> Self {
        Self::new(z.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![C64::new(0.0, 0.0); n])
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn coords(&self) -> &[C64] {
        &self.z
    }

    /// `z_j`, 1-based.
    pub fn get(&self, j: usize) -> C64 {
        self.z[j - 1]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.z.iter().map(|c| c * s).collect())
    }
}

/// Roots `t_1, …, t_n` whose elementary symmetric functions give a
/// [`SymPoint`].
#[derive(Clone, Debug, PartialEq)]
pub struct RootTuple {
    t: Vec<C64>,
}

impl RootTuple {
    pub fn new(t: Vec<C64>) -> Self {
        assert!(!t.is_empty(), "RootTuple needs n >= 1");
        Self { t }
    }

    /// Roots in the closed unit disc, up to `1e-12` slack.
    pub fn closed_disc(t: Vec<C64>) -> Result<Self> {
        if let Some(bad) = t.iter().find(|c| c.norm() > 1.0 + 1e-12) {
            return Err(Error::OutsideDisc(bad.norm()));
        }
        Ok(Self::new(t))
    }

    /// `(e^{iθ_1}, …, e^{iθ_k}, 1, …)` padded with ones to length `n`.
    pub fn from_angles(theta: &[f64], n: usize) -> Self {
        assert!(theta.len() <= n);
        let mut t: Vec<C64> = theta.iter().map(|&a| C64::cis(a)).collect();
        t.resize(n, C64::new(1.0, 0.0));
        Self::new(t)
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn roots(&self) -> &[C64] {
        &self.t
    }
}
