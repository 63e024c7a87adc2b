use serde::{Deserialize, Serialize};

use crate::numfmt::{dec17, dec17_opt, dec17_vec};
use crate::polyalg::ExpSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertMode {
    Grid,
    BranchBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// Every point of the domain satisfies `|F| < τ`.
    CertifiedBelow,
    /// The witness satisfies `|F| ≥ τ`.
    WitnessAtOrAbove,
    /// Neither, e.g. the grid is too coarse or a resource cap was hit.
    Inconclusive,
    /// No threshold was given; `max_sample ≤ max|F| ≤ upper_bound`.
    MaximumBracketed,
}

/// A local maximum found while certifying, kept for reporting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    #[serde(with = "dec17_vec")]
    pub angles: Vec<f64>,
    #[serde(with = "dec17")]
    pub value: f64,
}

/// Record of a maximization of `|F|` over a torus.
///
/// Floats serialize as 17-significant-digit decimal strings. `wall_time_s` is
/// the only field that depends on the machine; [`Certificate::without_timing`]
/// drops it for byte-stable output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub mode: CertMode,
    #[serde(rename = "L", with = "dec17")]
    pub lipschitz: f64,
    #[serde(with = "dec17_opt")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "dec17_opt")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boxes_explored: Option<u64>,
    #[serde(with = "dec17")]
    pub max_sample: f64,
    /// Proven upper bound on `max |F|` (infinite when nothing was proven).
    #[serde(with = "dec17")]
    pub upper_bound: f64,
    #[serde(with = "dec17_vec")]
    pub witness: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub peaks: Vec<Peak>,
    pub conclusion: Conclusion,
    pub evals: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "dec17_opt")]
    pub wall_time_s: Option<f64>,
}

impl Certificate {
    pub fn is_certified_below(&self) -> bool {
        self.conclusion == Conclusion::CertifiedBelow
    }

    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_s: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    /// Re-evaluates the recorded witness: for `witness_at_or_above` it must
    /// reach `τ − 1e-12`, and in every mode it must reproduce `max_sample`.
    pub fn recheck_witness(&self, f: &ExpSum) -> bool {
        if self.witness.len() != f.dim() {
            return false;
        }
        let v = f.eval(&self.witness).norm();
        let reproduces = (v - self.max_sample).abs() <= 1e-12 * (1.0 + v);
        match (self.conclusion, self.tau) {
            (Conclusion::WitnessAtOrAbove, Some(tau)) => reproduces && v >= tau - 1e-12,
            _ => reproduces,
        }
    }
}
