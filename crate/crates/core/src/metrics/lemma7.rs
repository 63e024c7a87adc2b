//! The weight-four competitor on `G_3`, its certified bound, and the
//! separation of `C_1 = √0.675` from `C_0`.

use std::f64::consts::PI;

use serde::Serialize;

use super::basic::DirectionVector;
use super::lemma6::{lemma6_constants, Lemma6Constants};
use crate::certopt::{
    bb_maximize, grid_certify, grid_certify_spec, BbOptions, BoundKind, Certificate, GridSpec, PeakSettings,
};
use crate::numfmt::dec17;
use crate::polyalg::{lipschitz_with_override, pullback_torus, ratio, ExpSum, LipschitzChoice, QuasiHomPoly, Rational};
use crate::{Error, Result, C64};

/// Lipschitz constant declared for the reference grid run.
pub const LEMMA7_DECLARED_LIPSCHITZ: f64 = 44.28;

/// `27/40 z_2² − 291/1000 z_2 z_1² + 33/1000 z_1⁴` on `G_3`.
pub fn lemma7_polynomial() -> QuasiHomPoly<Rational> {
    QuasiHomPoly::from_terms(
        3,
        [
            (vec![0, 2, 0], ratio(27, 40)),
            (vec![2, 1, 0], ratio(-291, 1000)),
            (vec![4, 0, 0], ratio(33, 1000)),
        ],
    )
    .expect("weight-four polynomial")
}

/// The pullback `g(θ_1, θ_2) = f(σ_3(e^{iθ_1}, e^{iθ_2}, 1))`.
pub fn lemma7_pullback() -> ExpSum {
    pullback_torus(&lemma7_polynomial(), true).expect("pullback of a weighted-homogeneous polynomial")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lemma7Mode {
    /// Branch-and-bound; `BoundKind::Lipschitz` runs the pure decision.
    BranchBound(BoundKind),
    /// Uniform grid of the given step (default `1.8e-3 / L`).
    Grid(Option<f64>),
    /// Step `4e-5` on `[0, 6.2832]²`.
    ReferenceGrid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma7Run {
    pub lipschitz: LipschitzChoice,
    pub certificate: Certificate,
}

/// Sampled maxima are tracked in clusters of this radius.
pub const PEAK_RADIUS: f64 = 0.1;

/// Certify `max |g| < 1` on the 2-torus. `lipschitz = None` uses
/// `min(44.28, generic bound)`; `Some(L)` forces `L`.
pub fn lemma7_certify(mode: Lemma7Mode, lipschitz: Option<f64>) -> Result<Lemma7Run> {
    let g = lemma7_pullback();
    let choice = match lipschitz {
        Some(l) => {
            if !(l >= g.lipschitz_bound()) {
                return Err(Error::InvalidArgument(format!(
                    "L = {l} is below the generic Lipschitz bound {}",
                    g.lipschitz_bound()
                )));
            }
            LipschitzChoice {
                generic: g.lipschitz_bound(),
                declared: Some(l),
                effective: l,
            }
        }
        None => lipschitz_with_override(&g, Some(LEMMA7_DECLARED_LIPSCHITZ)),
    };
    let l = choice.effective;
    let certificate = match mode {
        Lemma7Mode::BranchBound(bound) => {
            let opts = BbOptions {
                bound,
                peaks: Some(PeakSettings {
                    radius: PEAK_RADIUS,
                    delta: 1e-6,
                }),
                polish: bound == BoundKind::SecondOrder,
                ..BbOptions::default()
            };
            let tol = if bound == BoundKind::SecondOrder { 1e-9 } else { 0.0 };
            bb_maximize(&g, l, Some(1.0), tol, &opts)?
        }
        Lemma7Mode::Grid(step) => grid_certify(&g, l, 1.0, step.unwrap_or(1.8e-3 / l))?,
        Lemma7Mode::ReferenceGrid => grid_certify_spec(&g, l, 1.0, GridSpec::reference())?,
    };
    Ok(Lemma7Run {
        lipschitz: choice,
        certificate,
    })
}

/// The three maximizers of `|g|` modulo `2π`.
pub fn lemma7_expected_peaks() -> [[f64; 2]; 3] {
    [[0.0, PI], [PI, 0.0], [PI, PI]]
}

/// `|Σ_{|α|=2} c_α X^α|^{1/2}` where the sum runs over the monomials of `P`
/// of ordinary degree two; a lower bound for the second Reiffen
/// pseudometric when `sup |P| ≤ 1` is certified.
pub fn reiffen2_lower(p: &QuasiHomPoly<Rational>, x: &DirectionVector, cert: Option<&Certificate>) -> Result<f64> {
    let cert = cert.ok_or_else(|| Error::MissingCertificate("no certificate for sup |P| < 1".into()))?;
    if !cert.is_certified_below() || cert.tau.is_none_or(|t| t > 1.0) {
        return Err(Error::MissingCertificate(format!(
            "certificate does not show sup |P| < 1 (conclusion {:?}, tau {:?})",
            cert.conclusion, cert.tau
        )));
    }
    if x.n() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: x.n() });
    }
    let quad = p.to_complex();
    let mut s = C64::new(0.0, 0.0);
    for (exps, c) in quad.terms() {
        if exps.iter().sum::<u32>() != 2 {
            continue;
        }
        let mut term = *c;
        for (j, &e) in exps.iter().enumerate() {
            term *= x.coords()[j].powu(e);
        }
        s += term;
    }
    Ok(s.norm().sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationReport {
    #[serde(rename = "C0", with = "dec17")]
    pub c0: f64,
    #[serde(rename = "C1", with = "dec17")]
    pub c1: f64,
    /// `C_1²`, exact.
    #[serde(rename = "C1_squared")]
    pub c1_squared: String,
    #[serde(with = "dec17")]
    pub margin: f64,
    pub margin_exceeds: String,
    pub lemma6: Lemma6Constants,
    pub lemma7_certificate: Certificate,
    pub chain: Vec<String>,
}

/// Smallest margin `C_1 − C_0` the report accepts.
pub const SEPARATION_MARGIN: f64 = 6e-4;

/// Assemble `C_1 − C_0` from the closed-form constants and a certified
/// bound `max |g| < 1`. Fails unless the certificate is `certified_below` 1.
pub fn g3_separation_report(lemma7: &Certificate) -> Result<SeparationReport> {
    let lemma6 = lemma6_constants()?;
    let f = lemma7_polynomial();
    let c1 = reiffen2_lower(&f, &DirectionVector::unit(3, 2), Some(lemma7))?;
    let c1_squared = f.coefficient(&[0, 2, 0]);
    let margin = c1 - lemma6.big_c0;
    if !(margin > SEPARATION_MARGIN) {
        return Err(Error::VerificationFailed(format!(
            "margin {margin} does not exceed {SEPARATION_MARGIN}"
        )));
    }
    let chain = vec![
        format!(
            "sup |f| < 1 on G_3 (certificate: max sample {}, bound {})",
            crate::numfmt::fmt17(lemma7.max_sample),
            crate::numfmt::fmt17(lemma7.upper_bound)
        ),
        format!(
            "C1 = sqrt({c1_squared}) = {} <= gamma^(2)(0; e2 + X) for X in span(e1, e3)",
            crate::numfmt::fmt17(c1)
        ),
        "hence C1 <= gamma-hat^(2)(0; e2) <= kappa-hat(0; e2)".to_string(),
        format!("gamma(0; e2) = C0 = {}", crate::numfmt::fmt17(lemma6.big_c0)),
        format!("C1 - C0 = {} > {}", crate::numfmt::fmt17(margin), SEPARATION_MARGIN),
        "hence the Kobayashi and Caratheodory distances from 0 differ on G_3".to_string(),
    ];
    Ok(SeparationReport {
        c0: lemma6.big_c0,
        c1,
        c1_squared: c1_squared.to_string(),
        margin,
        margin_exceeds: crate::numfmt::fmt17(SEPARATION_MARGIN),
        lemma6,
        lemma7_certificate: lemma7.clone(),
        chain,
    })
}

impl SeparationReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for line in &self.chain {
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_lattice_points() {
        let g = lemma7_pullback();
        assert!((g.eval(&[0.0, PI]).norm() - 0.999).abs() < 1e-13);
        assert!((g.eval(&[PI, PI]).norm() - 0.999).abs() < 1e-13);
        assert!((g.eval(&[0.0, 0.0]).norm() - 0.891).abs() < 1e-13);
    }

    #[test]
    fn reiffen_requires_certificate() {
        let f = lemma7_polynomial();
        assert!(matches!(
            reiffen2_lower(&f, &DirectionVector::unit(3, 2), None),
            Err(Error::MissingCertificate(_))
        ));
    }
}
