//! Maxima of weight-two polynomials on the distinguished boundary and the
//! bounds they give for `γ(0; e_2)`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::surd::Fixed;
use crate::certopt::{bb_maximize, AngleSymmetry, minimize_1d, BbOptions, Certificate, Conclusion, Interval1D};
use crate::numfmt::{dec17, dec17_opt, fmt_complex};
use crate::polyalg::{
    pullback_torus, ratio, rational_from_f64, Coeff, ComplexPoly, QuasiHomPoly, Rational,
};
use crate::symcore::{pk_polynomial, sym_map, RootTuple};
use crate::{Error, Result, C64};

fn exact_f64(r: &Rational) -> f64 {
    Fixed::from_rational(r).to_f64()
}

/// `z_2 + c z_1²` on `G_n`.
pub fn weight_two_poly(n: usize, c: C64) -> Result<ComplexPoly> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let mut e1 = vec![0; n];
    e1[0] = 2;
    let mut e2 = vec![0; n];
    e2[1] = 1;
    QuasiHomPoly::from_terms(n, [(e2, C64::new(1.0, 0.0)), (e1, c)])
}

/// Bracket `max_{𝕋ⁿ} |P ∘ σ_n|` for a weighted-homogeneous `P`.
fn torus_max<C: Coeff>(p: &QuasiHomPoly<C>, tau: Option<f64>, tol: f64) -> Result<Certificate> {
    let f = pullback_torus(p, true)?;
    let real = f.terms().all(|(_, c)| c.im == 0.0);
    let opts = BbOptions {
        symmetry: if real {
            AngleSymmetry::CircularReflect
        } else {
            AngleSymmetry::Circular
        },
        ..BbOptions::default()
    };
    bb_maximize(&f, f.lipschitz_bound(), tau, tol, &opts)
}

fn require_bracketed(cert: &Certificate, what: &str) -> Result<()> {
    match cert.conclusion {
        Conclusion::MaximumBracketed | Conclusion::CertifiedBelow | Conclusion::WitnessAtOrAbove => Ok(()),
        Conclusion::Inconclusive => Err(Error::VerificationFailed(format!(
            "{what}: maximization inconclusive ({})",
            cert.diagnostics.as_deref().unwrap_or("no diagnostics")
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MncResult {
    pub n: usize,
    /// Coefficient in `z_2 + c z_1²`.
    #[serde(serialize_with = "ser_complex")]
    pub c: C64,
    #[serde(with = "dec17")]
    pub value: f64,
    #[serde(with = "dec17")]
    pub upper_bound: f64,
    pub certificate: Certificate,
}

fn ser_complex<S: serde::Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_complex(*z))
}

/// `m_{n,c} = max_{∂G_n} |z_2 + c z_1²|`, bracketed to within `tol`.
pub fn m_nc(n: usize, c: C64, tol: f64) -> Result<MncResult> {
    let p = weight_two_poly(n, c)?;
    let cert = torus_max(&p, None, tol)?;
    require_bracketed(&cert, "m_nc")?;
    Ok(MncResult {
        n,
        c,
        value: cert.max_sample,
        upper_bound: cert.upper_bound,
        certificate: cert,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaOptions {
    /// Tolerance of the search over `c`.
    pub c_tol: f64,
    /// Bracketing tolerance of each `m_{n,c}`; by default `1e-9` for
    /// `n = 3`, `1e-4` for `n = 5` and `1e-3` above, where the maximization
    /// gets expensive.
    pub max_tol: Option<f64>,
}

impl Default for GammaOptions {
    fn default() -> Self {
        Self {
            c_tol: 1e-6,
            max_tol: None,
        }
    }
}

impl GammaOptions {
    pub fn max_tol_for(&self, n: usize) -> f64 {
        self.max_tol.unwrap_or(match n {
            0..=3 => 1e-9,
            4..=5 => 1e-4,
            _ => 1e-3,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaBounds {
    pub n: usize,
    #[serde(with = "dec17")]
    pub lower: f64,
    #[serde(with = "dec17")]
    pub upper: f64,
    /// `1 / min_{0 ≤ c ≤ 1/2} max_{∂G_n} |z_2 − c z_1²|` from an uncertified
    /// search over `c`; equal to `2/n` for even `n`.
    #[serde(with = "dec17")]
    pub estimate: f64,
    /// Minimizing `c` in the `z_2 − c z_1²` convention (absent for even `n`).
    #[serde(with = "dec17_opt")]
    pub c_star: Option<f64>,
    /// Bracketing tolerance of each maximization behind `estimate`.
    #[serde(with = "dec17_opt")]
    pub max_tol: Option<f64>,
    pub convention: &'static str,
}

pub const GAMMA_CONVENTION: &str = "c_star minimizes max |z2 - c*z1^2| over real c in [0, 1/2]";

/// `(2/n)(1 + 2/((n−1)(n+2)))`, the reciprocal of `M_n = (n−1)(n+2)/(2(n+1))`.
pub fn gamma2_lower_exact(n: usize) -> Rational {
    let n = n as i64;
    ratio(2, n) * (Rational::one() + ratio(2, (n - 1) * (n + 2)))
}

pub fn gamma2_upper_exact(n: usize) -> Rational {
    let n = n as i64;
    ratio(2, n) * (Rational::one() + ratio(2, (n - 1) * (n + 1)))
}

/// `M_n = (n−1)(n+2)/(2(n+1))`.
pub fn m_n_exact(n: usize) -> Rational {
    let n = n as i64;
    ratio((n - 1) * (n + 2), 2 * (n + 1))
}

pub fn gamma2_bounds(n: usize, opts: GammaOptions) -> Result<GammaBounds> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    if n.is_multiple_of(2) {
        let v = exact_f64(&ratio(2, n as i64));
        return Ok(GammaBounds {
            n,
            lower: v,
            upper: v,
            estimate: v,
            c_star: None,
            max_tol: None,
            convention: GAMMA_CONVENTION,
        });
    }
    let mut failure = None;
    let max_tol = opts.max_tol_for(n);
    let objective = |c: f64| match m_nc(n, C64::new(-c, 0.0), max_tol) {
        Ok(r) => r.value,
        Err(e) => {
            failure.get_or_insert(e);
            f64::INFINITY
        }
    };
    let best = minimize_1d(objective, Interval1D::new(0.0, 0.5)?, opts.c_tol);
    if let Some(e) = failure {
        return Err(e);
    }
    let best = best?;
    Ok(GammaBounds {
        n,
        lower: exact_f64(&gamma2_lower_exact(n)),
        upper: exact_f64(&gamma2_upper_exact(n)),
        estimate: 1.0 / best.fx,
        c_star: Some(best.x),
        max_tol: Some(max_tol),
        convention: GAMMA_CONVENTION,
    })
}

fn require_odd(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("need odd n >= 3, got {n}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop4Lower {
    pub n: usize,
    #[serde(with = "dec17")]
    pub epsilon: f64,
    /// Exact coefficient of `z_1²` and `z_2`.
    pub coefficients: [String; 2],
    #[serde(rename = "M_n", with = "dec17")]
    pub m_n: f64,
    #[serde(with = "dec17")]
    pub max_value: f64,
    /// Roots `t_j` at the witness, `t_n` pinned to 1.
    pub witness_roots: Vec<String>,
    /// Sizes of the groups of roots near `t_0` and `−t_0` (only for `ε = 0`).
    pub cluster_sizes: Option<[usize; 2]>,
    pub holds: bool,
    pub certificate: Certificate,
}

/// `((n−1−2n(n+1)ε)/(2(n+1))) z_1² − (1+2ε) z_2`, the symmetric-coordinate
/// form of `g_n(t) + εΣt_j² − ε(n+1)(Σt_j)²`.
pub fn odd_extremal_polynomial(n: usize, epsilon: &Rational) -> Result<QuasiHomPoly<Rational>> {
    let ni = n as i64;
    let a = (Rational::from_integer((ni - 1).into()) - Rational::from_integer((2 * ni * (ni + 1)).into()) * epsilon)
        / Rational::from_integer((2 * (ni + 1)).into());
    let b = -(Rational::one() + Rational::from_integer(2.into()) * epsilon);
    let mut e1 = vec![0; n];
    e1[0] = 2;
    let mut e2 = vec![0; n];
    e2[1] = 1;
    QuasiHomPoly::from_terms(n, [(e1, a), (e2, b)])
}

/// Split `roots` into those within `radius` of `roots[last]` and of its
/// negative; `None` if some root is in neither group.
pub fn antipodal_clusters(roots: &[C64], radius: f64) -> Option<[usize; 2]> {
    let t0 = *roots.last()?;
    let mut sizes = [0, 0];
    for r in roots {
        if (r - t0).norm() <= radius {
            sizes[0] += 1;
        } else if (r + t0).norm() <= radius {
            sizes[1] += 1;
        } else {
            return None;
        }
    }
    sizes.sort_unstable();
    Some(sizes)
}

pub const CLUSTER_RADIUS: f64 = 1e-4;

/// With `ε = 0`, bracket `max_{𝕋ⁿ} |g_n|` and check it equals `M_n` within
/// `tol` at a maximizer whose roots form two antipodal groups of sizes
/// `⌊n/2⌋` and `⌈n/2⌉`. With `ε > 0`, certify `max |g_{n,ε}| < M_n`.
pub fn verify_prop4_lower(n: usize, epsilon: f64, tol: f64) -> Result<Prop4Lower> {
    require_odd(n)?;
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} must be non-negative")));
    }
    let eps = rational_from_f64(epsilon);
    let p = odd_extremal_polynomial(n, &eps)?;
    let mn = m_n_exact(n);
    let m_n = exact_f64(&mn);
    let cert = if epsilon == 0.0 {
        torus_max(&p, None, tol)?
    } else {
        torus_max(&p, Some(m_n), tol)?
    };
    let roots: Vec<C64> = RootTuple::from_angles(&cert.witness, n).roots().to_vec();
    let (cluster_sizes, holds) = if epsilon == 0.0 {
        let sizes = antipodal_clusters(&roots, CLUSTER_RADIUS);
        let want = [n / 2, n - n / 2];
        let ok = cert.conclusion == Conclusion::MaximumBracketed
            && (cert.max_sample - m_n).abs() <= tol
            && cert.upper_bound <= m_n + tol
            && sizes == Some(want);
        (sizes, ok)
    } else {
        (None, cert.is_certified_below())
    };
    let mut e1 = vec![0; n];
    e1[0] = 2;
    let mut e2 = vec![0; n];
    e2[1] = 1;
    Ok(Prop4Lower {
        n,
        epsilon,
        coefficients: [p.coefficient(&e1).to_string(), p.coefficient(&e2).to_string()],
        m_n,
        max_value: cert.max_sample,
        witness_roots: roots.iter().map(|r| fmt_complex(*r)).collect(),
        cluster_sizes,
        holds,
        certificate: cert,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryPointCheck {
    pub label: &'static str,
    #[serde(serialize_with = "ser_complex")]
    pub z1: C64,
    #[serde(serialize_with = "ser_complex")]
    pub z2: C64,
    /// `|z_2 + c z_1²|`.
    #[serde(with = "dec17")]
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop4Upper {
    pub n: usize,
    /// `c = −(n−1)²/(2(n²+1))`.
    #[serde(with = "dec17")]
    pub c: f64,
    /// `n(n²−1)/(2(n²+1))`.
    #[serde(with = "dec17")]
    pub threshold: f64,
    pub points: Vec<BoundaryPointCheck>,
    /// The first two points attain the threshold exactly.
    pub equality_points_hold: bool,
    /// The third point strictly exceeds the threshold (exact comparison).
    pub strict_step_holds: bool,
    pub holds: bool,
}

/// Evaluate `|z_2 + c z_1²|` at three boundary points built from root
/// multisets, after checking their symmetric coordinates.
pub fn verify_prop4_upper(n: usize) -> Result<Prop4Upper> {
    require_odd(n)?;
    let nf = n as f64;
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let half = (n - 1) / 2;
    let mut pair_roots = vec![one];
    pair_roots.extend(std::iter::repeat_n(one, half));
    pair_roots.extend(std::iter::repeat_n(-one, half));
    let mut tilted = vec![i];
    tilted.extend(std::iter::repeat_n(one, n - 1));
    let specs: [(&'static str, Vec<C64>, C64, C64); 3] = [
        ("(t-1)^n", vec![one; n], C64::new(nf, 0.0), C64::new(nf * (nf - 1.0) / 2.0, 0.0)),
        ("(t-1)(t^2-1)^((n-1)/2)", pair_roots, one, C64::new((1.0 - nf) / 2.0, 0.0)),
        (
            "(t-i)(t-1)^(n-1)",
            tilted,
            C64::new(nf - 1.0, 1.0),
            C64::new((nf - 1.0) * (nf - 2.0) / 2.0, nf - 1.0),
        ),
    ];

    let ni = n as i64;
    let c_exact = ratio(-(ni - 1) * (ni - 1), 2 * (ni * ni + 1));
    let thr_exact = ratio(ni * (ni * ni - 1), 2 * (ni * ni + 1));
    let c = exact_f64(&c_exact);
    let mut points = Vec::new();
    for (label, roots, want1, want2) in specs {
        let z = sym_map(&RootTuple::new(roots));
        let (z1, z2) = (z.get(1), z.get(2));
        if (z1 - want1).norm() > 1e-12 || (z2 - want2).norm() > 1e-12 {
            return Err(Error::VerificationFailed(format!(
                "boundary point from {label}: got z1 = {}, z2 = {}, expected {}, {}",
                fmt_complex(z1),
                fmt_complex(z2),
                fmt_complex(want1),
                fmt_complex(want2)
            )));
        }
        points.push(BoundaryPointCheck {
            label,
            z1,
            z2,
            value: (z2 + c * z1 * z1).norm(),
        });
    }

    // exact |z2 + c z1²|² at the three points, with the stated coordinates
    let q = |v: i64| Rational::from_integer(v.into());
    let abs_sq = |re: Rational, im: Rational| &re * &re + &im * &im;
    let thr_sq = &thr_exact * &thr_exact;
    let p1 = abs_sq(q(ni * (ni - 1)) / q(2) + &c_exact * q(ni * ni), Rational::zero());
    let p2 = abs_sq(q(1 - ni) / q(2) + &c_exact, Rational::zero());
    // z1² = (n−1)² − 1 + 2(n−1)i
    let p3 = abs_sq(
        q((ni - 1) * (ni - 2)) / q(2) + &c_exact * q((ni - 1) * (ni - 1) - 1),
        q(ni - 1) + &c_exact * q(2 * (ni - 1)),
    );
    let equality_points_hold = p1 == thr_sq && p2 == thr_sq;
    let strict_step_holds = (&p3 - &thr_sq).is_positive();
    Ok(Prop4Upper {
        n,
        c,
        threshold: exact_f64(&thr_exact),
        points,
        equality_points_hold,
        strict_step_holds,
        holds: equality_points_hold && strict_step_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvenExtremals {
    pub n: usize,
    pub polynomials: [String; 2],
    #[serde(with = "crate::numfmt::dec17_vec")]
    pub maxima: Vec<f64>,
    pub holds: bool,
    pub certificates: Vec<Certificate>,
}

/// Bracket the maxima of `(2/n)z_2 − ((n−1)/n²)z_1²` and `(2/n)z_2 − (1/n)z_1²`
/// on the distinguished boundary and check both lie in `[1 − tol, 1 + tol]`.
pub fn verify_even_extremals(n: usize, tol: f64) -> Result<EvenExtremals> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("need even n >= 2, got {n}")));
    }
    let ni = n as i64;
    let mut e1 = vec![0; n];
    e1[0] = 2;
    let mut e2 = vec![0; n];
    e2[1] = 1;
    let mut certs = Vec::new();
    let mut names = Vec::new();
    for a in [ratio(-(ni - 1), ni * ni), ratio(-1, ni)] {
        names.push(format!("{} z2 + {} z1^2", ratio(2, ni), a));
        let p = QuasiHomPoly::from_terms(n, [(e2.clone(), ratio(2, ni)), (e1.clone(), a)])?;
        let cert = torus_max(&p, None, tol)?;
        require_bracketed(&cert, "even extremal")?;
        certs.push(cert);
    }
    let holds = certs
        .iter()
        .all(|c| c.max_sample >= 1.0 - tol && c.upper_bound <= 1.0 + tol);
    Ok(EvenExtremals {
        n,
        polynomials: [names[0].clone(), names[1].clone()],
        maxima: certs.iter().map(|c| c.max_sample).collect(),
        holds,
        certificates: certs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop2Report {
    pub n: usize,
    pub k: usize,
    /// `1 − (certified upper bound of max |P_k|)`.
    #[serde(with = "dec17")]
    pub delta: f64,
    /// `(k/n)/(1 − δ)`.
    #[serde(with = "dec17")]
    pub gamma_lower: f64,
    #[serde(rename = "rho", with = "dec17")]
    pub rho_value: f64,
    pub holds: bool,
    pub certificate: Certificate,
}

/// Certify `max_{𝕋ⁿ} |P_k| ≤ 1 − δ` with `δ > tol` for `k ∤ n`.
pub fn verify_prop2_strict(n: usize, k: usize, tol: f64) -> Result<Prop2Report> {
    if k == 0 || k >= n || n.is_multiple_of(k) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k < n with k not dividing n, got n = {n}, k = {k}"
        )));
    }
    let p = pk_polynomial(n, k)?;
    let cert = torus_max(&p, None, tol)?;
    require_bracketed(&cert, "P_k maximum")?;
    let delta = 1.0 - cert.upper_bound;
    let rho_value = k as f64 / n as f64;
    Ok(Prop2Report {
        n,
        k,
        delta,
        gamma_lower: rho_value / (1.0 - delta),
        rho_value,
        holds: delta > tol,
        certificate: cert,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop8Report {
    pub n: usize,
    /// Coefficient of `z_1 z_n` in `p_{n+1}/n`, exact.
    pub cross_coefficient: String,
    #[serde(with = "dec17")]
    pub cross_coefficient_value: f64,
    #[serde(rename = "gamma2", with = "dec17")]
    pub gamma2: f64,
    /// `√((n+1)/2 · γ_2 · |X_1 X_n|)`.
    #[serde(with = "dec17")]
    pub statement_factor_bound: f64,
    /// `√((n+1)/n · γ_2 · |X_1 X_n|)`.
    #[serde(with = "dec17")]
    pub proof_factor_bound: f64,
    /// `2`, the sum of the second-order metrics of `n e_1` and `e_n`; `n ≥ 3`.
    #[serde(with = "dec17_opt")]
    pub comparison_value: Option<f64>,
    /// Odd `n = 2k−1`: coefficient of `z_1 z_n` in
    /// `(C−c) p_k² − C p_{2k}` with `C = γ_2/2`; it does not involve `c`.
    #[serde(with = "dec17_opt")]
    pub odd_competitor_cross_coefficient: Option<f64>,
}

fn cross_index(n: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[0] += 1;
    e[n - 1] += 1;
    e
}

pub fn prop8_bound(n: usize, x1: C64, xn: C64, gamma: &GammaBounds) -> Result<Prop8Report> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    if gamma.n != n {
        return Err(Error::DimensionMismatch { expected: n, got: gamma.n });
    }
    let cross = crate::polyalg::waring_coefficient(n);
    let g2 = gamma.estimate;
    let prod = (x1 * xn).norm();
    let nf = n as f64;
    let odd = if n % 2 == 1 {
        let k = n.div_ceil(2);
        let idx = cross_index(n);
        let pk = crate::polyalg::newton_power_sum(n, k).expr;
        let p2k = crate::polyalg::newton_power_sum(n, 2 * k).expr;
        let a = (&pk * &pk).coefficient(&idx);
        if !a.is_zero() {
            return Err(Error::VerificationFailed(format!("p_k^2 has z1*zn coefficient {a}")));
        }
        Some(-exact_f64(&p2k.coefficient(&idx)) * g2 / 2.0)
    } else {
        None
    };
    Ok(Prop8Report {
        n,
        cross_coefficient: cross.to_string(),
        cross_coefficient_value: exact_f64(&cross),
        gamma2: g2,
        statement_factor_bound: ((nf + 1.0) / 2.0 * g2 * prod).sqrt(),
        proof_factor_bound: ((nf + 1.0) / nf * g2 * prod).sqrt(),
        comparison_value: (n >= 3).then_some(2.0),
        odd_competitor_cross_coefficient: odd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_nc_small_cases() {
        let r = m_nc(3, C64::new(0.0, 0.0), 1e-9).unwrap();
        assert!((r.value - 3.0).abs() < 1e-9);
        let r = m_nc(2, C64::new(-0.5, 0.0), 1e-9).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn closed_form_bounds() {
        assert_eq!(gamma2_lower_exact(3), ratio(4, 5));
        assert_eq!(gamma2_upper_exact(3), ratio(5, 6));
        assert_eq!(m_n_exact(5), ratio(28, 12));
        let b = gamma2_bounds(4, GammaOptions::default()).unwrap();
        assert_eq!((b.lower, b.upper, b.estimate), (0.5, 0.5, 0.5));
    }

    #[test]
    fn odd_extremal_polynomial_matches_root_form() {
        // g_{n,ε}(t) = Σ_{i<j} ... compare at a random torus point
        let n = 3;
        let eps = ratio(1, 100);
        let p = odd_extremal_polynomial(n, &eps).unwrap().to_complex();
        let t = [C64::cis(0.3), C64::cis(2.1), C64::cis(-1.2)];
        let s1: C64 = t.iter().sum();
        let s2: C64 = t.iter().map(|x| x * x).sum();
        let e = 0.01;
        let nf = n as f64;
        // g_n(t) = ((n−1)/(2(n+1)))σ1² − σ2 with σ2 = (s1² − s2)/2
        let g = (nf - 1.0) / (2.0 * (nf + 1.0)) * s1 * s1 - (s1 * s1 - s2) / 2.0 + e * s2 - e * (nf + 1.0) * s1 * s1;
        let z = sym_map(&RootTuple::new(t.to_vec()));
        assert!((p.eval(&z).unwrap() - g).norm() < 1e-13);
    }

    #[test]
    fn boundary_points_for_three() {
        let r = verify_prop4_upper(3).unwrap();
        assert!(r.holds);
        assert!((r.threshold - 1.2).abs() < 1e-15);
        assert!((r.points[2].value - 1.2649110640673518).abs() < 1e-12);
    }

    #[test]
    fn clusters() {
        let one = C64::new(1.0, 0.0);
        assert_eq!(antipodal_clusters(&[one, -one, one], 1e-4), Some([1, 2]));
        assert_eq!(antipodal_clusters(&[C64::new(0.0, 1.0), one], 1e-4), None);
    }

    #[test]
    fn strict_bound_needs_a_non_divisor() {
        assert!(verify_prop2_strict(4, 2, 1e-6).is_err());
    }
}
