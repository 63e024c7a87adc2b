//! Closed-form constants of the real-`c` minimization for `G_3` and the
//! quadratic reduction of `max_φ |1 + 2e^{iφ} − c(2 + e^{iφ})²|²`.

use serde::Serialize;

use super::surd::{Fixed, QuadSurd};
use crate::numfmt::dec17;
use crate::polyalg::ratio;
use crate::{Error, Result, C64};

/// Digits kept in the decimal renderings of the constants.
pub const CONSTANT_DIGITS: u32 = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma6Constants {
    /// Open interval `(1/6, (5−√17)/4)`.
    #[serde(with = "crate::numfmt::dec17_vec")]
    pub delta: Vec<f64>,
    /// `(√13 − 1)/12`.
    #[serde(with = "dec17")]
    pub c0: f64,
    /// `√(8/(13√13 − 35))`.
    #[serde(rename = "C0", with = "dec17")]
    pub big_c0: f64,
    /// `g(c0)` for `g(c) = (3c−1)³/(c(4c−1))`.
    #[serde(with = "dec17")]
    pub g_min: f64,
    /// `((9−√17)/4)²`.
    #[serde(with = "dec17")]
    pub endpoint_value: f64,
    pub c0_digits: String,
    #[serde(rename = "C0_digits")]
    pub big_c0_digits: String,
    pub g_min_digits: String,
    /// `g(c0) = (13√13 − 35)/8` holds exactly in `ℚ(√13)`.
    pub g_min_exact: bool,
    /// `|g(c0) − 1/C0²|` in 60-digit arithmetic.
    #[serde(with = "dec17")]
    pub identity_residual: f64,
    pub endpoint_exceeds_min: bool,
}

/// `g(c) = (3c−1)³ / (c(4c−1))`.
pub fn lemma6_g(c: f64) -> f64 {
    (3.0 * c - 1.0).powi(3) / (c * (4.0 * c - 1.0))
}

pub fn lemma6_constants() -> Result<Lemma6Constants> {
    let d = 13;
    let q = |p, r| QuadSurd::rational(ratio(p, r), d);
    let c0 = &(&QuadSurd::sqrt_d(d) - &q(1, 1)) / &q(12, 1);
    let three_c = &q(3, 1) * &c0;
    let u = &three_c - &q(1, 1);
    let num = &(&u * &u) * &u;
    let den = &c0 * &(&(&q(4, 1) * &c0) - &q(1, 1));
    let g = &num / &den;
    let expected = QuadSurd::new(ratio(-35, 8), ratio(13, 8), d);
    let g_min_exact = g == expected;

    let g_fixed = g.to_fixed();
    // C0 = sqrt(8/(13√13 − 35)) = 1/sqrt(g_min)
    let big_c0 = (Fixed::from_int(1) / expected.to_fixed()).sqrt();
    let inv_sq = Fixed::from_int(1) / (big_c0.clone() * big_c0.clone());
    let identity_residual = (g_fixed.clone() - inv_sq).abs().to_f64();

    let endpoint = QuadSurd::new(ratio(49, 8), ratio(-9, 8), 17);
    let endpoint_fixed = endpoint.to_fixed();
    let endpoint_exceeds_min = (endpoint_fixed.clone() - g_fixed.clone()).is_positive();

    let delta_hi = QuadSurd::new(ratio(5, 4), ratio(-1, 4), 17).to_f64();
    let out = Lemma6Constants {
        delta: vec![1.0 / 6.0, delta_hi],
        c0: c0.to_f64(),
        big_c0: big_c0.to_f64(),
        g_min: g_fixed.to_f64(),
        endpoint_value: endpoint_fixed.to_f64(),
        c0_digits: c0.to_fixed().to_decimal(CONSTANT_DIGITS),
        big_c0_digits: big_c0.to_decimal(CONSTANT_DIGITS),
        g_min_digits: g_fixed.to_decimal(CONSTANT_DIGITS),
        g_min_exact,
        identity_residual,
        endpoint_exceeds_min,
    };
    if !out.g_min_exact || out.identity_residual > 1e-12 || !out.endpoint_exceeds_min {
        return Err(Error::VerificationFailed(format!("closed-form constants inconsistent: {out:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FcCheck {
    #[serde(with = "dec17")]
    pub c: f64,
    /// Maximum of `|1 + 2e^{iφ} − c(2+e^{iφ})²|²` over the sampled angles.
    #[serde(with = "dec17")]
    pub sampled_max: f64,
    /// Maximum of the quadratic `f_c` on `[−1, 1]`.
    #[serde(with = "dec17")]
    pub closed_form_max: f64,
    #[serde(with = "dec17")]
    pub argmax_x: f64,
    pub vertex_used: bool,
    pub c_in_delta: bool,
    /// Largest `|lhs(φ) − f_c(cos φ)|` over the samples.
    #[serde(with = "dec17")]
    pub pointwise_error: f64,
    pub agrees: bool,
}

/// `f_c(x) = 4c(4c−1)x² + 4(2c−1)(5c−1)x + 25c² − 22c + 5`.
pub fn fc_quadratic(c: f64, x: f64) -> f64 {
    4.0 * c * (4.0 * c - 1.0) * x * x + 4.0 * (2.0 * c - 1.0) * (5.0 * c - 1.0) * x + 25.0 * c * c - 22.0 * c
        + 5.0
}

fn fc_lhs(c: f64, phi: f64) -> f64 {
    let u = C64::cis(phi);
    let w = C64::new(2.0, 0.0) + u;
    (C64::new(1.0, 0.0) + 2.0 * u - c * w * w).norm_sqr()
}

/// Compare the angular maximum with the maximum of `f_c` on `[−1, 1]`.
///
/// The angles are `samples` equispaced points plus `acos` of the predicted
/// maximizer, so the sampled value reaches the closed form up to rounding.
pub fn lemma6_fc_check(c: f64, samples: usize) -> Result<FcCheck> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let delta_hi = (5.0 - 17f64.sqrt()) / 4.0;
    let c_in_delta = c > 1.0 / 6.0 && c < delta_hi;
    let mut cands = vec![(fc_quadratic(c, -1.0), -1.0), (fc_quadratic(c, 1.0), 1.0)];
    let lead = 4.0 * c * (4.0 * c - 1.0);
    let mut vertex = None;
    if lead < 0.0 {
        let xv = (10.0 * c * c - 7.0 * c + 1.0) / (2.0 * c * (1.0 - 4.0 * c));
        if (-1.0..=1.0).contains(&xv) {
            vertex = Some(xv);
            cands.push((fc_quadratic(c, xv), xv));
        }
    }
    let (closed_form_max, argmax_x) = cands
        .into_iter()
        .fold((f64::NEG_INFINITY, 0.0), |acc, v| if v.0 > acc.0 { v } else { acc });
    let vertex_used = vertex == Some(argmax_x);

    let mut sampled_max = fc_lhs(c, argmax_x.acos());
    let mut pointwise_error = 0.0f64;
    for i in 0..samples {
        let phi = std::f64::consts::TAU * i as f64 / samples as f64;
        let v = fc_lhs(c, phi);
        sampled_max = sampled_max.max(v);
        pointwise_error = pointwise_error.max((v - fc_quadratic(c, phi.cos())).abs());
    }
    let agrees = (sampled_max - closed_form_max).abs() <= 1e-9 && pointwise_error <= 1e-9;
    Ok(FcCheck {
        c,
        sampled_max,
        closed_form_max,
        argmax_x,
        vertex_used,
        c_in_delta,
        pointwise_error,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let k = lemma6_constants().unwrap();
        let s13 = 13f64.sqrt();
        assert!((k.c0 - (s13 - 1.0) / 12.0).abs() < 1e-16);
        assert!((k.g_min - (13.0 * s13 - 35.0) / 8.0).abs() < 1e-14);
        assert!(k.big_c0_digits.starts_with("0.82088062008825"));
        assert!((k.endpoint_value - 1.486_506_171_180_132).abs() < 1e-15);
        assert!(k.delta[0] < k.c0 && k.c0 < k.delta[1]);
        assert!(k.identity_residual < 1e-50);
    }

    #[test]
    fn fc_examples() {
        let r = lemma6_fc_check(0.0, 1000).unwrap();
        assert!(r.agrees && (r.closed_form_max - 9.0).abs() < 1e-12);
        let c0 = (13f64.sqrt() - 1.0) / 12.0;
        let r = lemma6_fc_check(c0, 4096).unwrap();
        assert!(r.agrees && r.vertex_used && r.c_in_delta);
        assert!((r.closed_form_max - lemma6_g(c0)).abs() < 1e-12);
        let r = lemma6_fc_check(0.3, 4096).unwrap();
        assert!(r.agrees && !r.vertex_used && !r.c_in_delta);
    }
}
