//! All roots of a complex polynomial by Aberth–Ehrlich iteration.
//!
//! Converged roots are polished with Newton steps, then near-coincident
//! roots whose spread is explained by the conditioning of a multiple root are
//! merged and re-centred, so that an `m`-fold root is reported to binary64
//! accuracy instead of `ε^{1/m}`.

use crate::{Error, Result, C64};

const MAX_ITERATIONS: usize = 1000;

/// Horner evaluation of `p` and `p'`, coefficients highest degree first.
fn horner2(a: &[C64], z: C64) -> (C64, C64) {
    let mut p = a[0];
    let mut dp = C64::new(0.0, 0.0);
    for c in &a[1..] {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |a_k| r^{d−k}`, the scale of rounding error in evaluating `p` at `|z| = r`.
fn abs_scale(a: &[C64], r: f64) -> f64 {
    a.iter().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Normalized derivatives `p^{(k)}(c)/k!` for `k = 0..=d` (Taylor shift).
fn taylor_at(a: &[C64], c: C64) -> Vec<C64> {
    let mut b = a.to_vec();
    let d = a.len() - 1;
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        for i in 1..=d - k {
            let prev = b[i - 1];
            b[i] += prev * c;
        }
        out.push(b[d - k]);
    }
    out
}

/// Roots of the polynomial with coefficients `coeffs` (highest degree first,
/// leading coefficient nonzero). Exact zero trailing coefficients become exact
/// zero roots.
pub fn polynomial_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let lead = *coeffs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty polynomial".into()))?;
    if lead == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let mut a: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    let mut roots = Vec::new();
    while a.len() > 1 && *a.last().unwrap() == C64::new(0.0, 0.0) {
        a.pop();
        roots.push(C64::new(0.0, 0.0));
    }
    let d = a.len() - 1;
    match d {
        0 => {}
        1 => roots.push(-a[1]),
        _ => roots.extend(aberth(&a)?),
    }
    Ok(roots)
}

fn aberth(a: &[C64]) -> Result<Vec<C64>> {
    let d = a.len() - 1;
    let eps = f64::EPSILON;
    // initial circle between the geometric mean and the Fujiwara-style bound
    let radius = (1..=d)
        .map(|k| a[k].norm().powf(1.0 / k as f64))
        .fold(0.0_f64, f64::max)
        .max(1e-3);
    let centre = -a[1] / d as f64;
    let mut z: Vec<C64> = (0..d)
        .map(|i| {
            let angle = std::f64::consts::TAU * i as f64 / d as f64 + 0.4;
            centre + C64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; d];

    for _ in 0..MAX_ITERATIONS {
        for i in 0..d {
            let (p, dp) = horner2(a, z[i]);
            let tol = 4.0 * d as f64 * eps * abs_scale(a, z[i].norm());
            if p.norm() <= tol {
                done[i] = true;
                continue;
            }
            done[i] = false;
            let ratio = if dp == C64::new(0.0, 0.0) {
                C64::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            } else {
                p / dp
            };
            let mut s = C64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff != C64::new(0.0, 0.0) {
                        s += 1.0 / diff;
                    }
                }
            }
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
            } else {
                z[i] -= ratio;
            }
        }
        if done.iter().all(|&x| x) {
            polish(a, &mut z);
            merge_clusters(a, &mut z);
            return Ok(z);
        }
    }
    Err(Error::RootsNotConverged {
        iterations: MAX_ITERATIONS,
    })
}

fn polish(a: &[C64], z: &mut [C64]) {
    for r in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner2(a, *r);
            if dp == C64::new(0.0, 0.0) {
                break;
            }
            let cand = *r - p / dp;
            if cand.is_finite() && horner2(a, cand).0.norm() < p.norm() {
                *r = cand;
            }
        }
    }
}

/// Agglomerative merging: a group of `m` roots is replaced by its centroid
/// when its radius is within the perturbation radius
/// `(4dε·p̃(|c|) / |p^{(m)}(c)/m!|)^{1/m}` of an `m`-fold root at the centroid.
fn merge_clusters(a: &[C64], z: &mut [C64]) {
    let d = a.len() - 1;
    let eps = f64::EPSILON;
    let mut groups: Vec<Vec<usize>> = (0..d).map(|i| vec![i]).collect();
    let centroid = |g: &[usize], z: &[C64]| g.iter().map(|&i| z[i]).sum::<C64>() / g.len() as f64;

    loop {
        let mut pairs = Vec::new();
        for x in 0..groups.len() {
            for y in x + 1..groups.len() {
                let dist = (centroid(&groups[x], z) - centroid(&groups[y], z)).norm();
                pairs.push((dist, x, y));
            }
        }
        pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
        let mut merged = false;
        for (_, x, y) in pairs {
            let members: Vec<usize> = groups[x].iter().chain(&groups[y]).copied().collect();
            let m = members.len();
            let c = centroid(&members, z);
            let spread = members.iter().map(|&i| (z[i] - c).norm()).fold(0.0, f64::max);
            let t = taylor_at(a, c);
            let lead = t[m].norm();
            let kappa = 4.0 * d as f64 * eps * abs_scale(a, c.norm());
            let allowed = if lead > 0.0 {
                2.0 * (kappa / lead).powf(1.0 / m as f64)
            } else {
                f64::INFINITY
            };
            if spread <= allowed.min(0.1 * (1.0 + c.norm())) {
                groups[x] = members;
                groups.remove(y);
                merged = true;
                break;
            }
        }
        if !merged {
            break;
        }
    }

    for g in groups.into_iter().filter(|g| g.len() > 1) {
        let m = g.len();
        let c0 = centroid(&g, z);
        let spread = g.iter().map(|&i| (z[i] - c0).norm()).fold(0.0, f64::max);
        // Newton on p^{(m-1)}, which has a simple root at an m-fold root of p
        let mut c = c0;
        for _ in 0..3 {
            let t = taylor_at(a, c);
            if t[m] == C64::new(0.0, 0.0) {
                break;
            }
            let step = t[m - 1] / (t[m] * m as f64);
            let cand = c - step;
            if !cand.is_finite() || (cand - c0).norm() > spread.max(f64::EPSILON) {
                break;
            }
            c = cand;
        }
        for i in g {
            z[i] = c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted_moduli(mut r: Vec<C64>) -> Vec<f64> {
        r.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        r.into_iter().map(|z| z.norm()).collect()
    }

    #[test]
    fn simple_roots() {
        // (x-1)(x+2)(x-3i)
        let p = [c(1.0, 0.0), c(1.0, -3.0), c(-2.0, -3.0), c(0.0, 6.0)];
        let r = polynomial_roots(&p).unwrap();
        for want in [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0)] {
            assert!(r.iter().any(|z| (z - want).norm() < 1e-13), "{r:?}");
        }
    }

    #[test]
    fn triple_root_is_accurate() {
        let p = [c(1.0, 0.0), c(-3.0, 0.0), c(3.0, 0.0), c(-1.0, 0.0)];
        let r = polynomial_roots(&p).unwrap();
        for z in &r {
            assert!((z - c(1.0, 0.0)).norm() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn high_multiplicity_on_circle() {
        // (x+1)^6 (x-i)
        let mut a = vec![c(1.0, 0.0)];
        let mul = |a: &[C64], r: C64| {
            let mut b = a.to_vec();
            b.push(c(0.0, 0.0));
            for i in (1..b.len()).rev() {
                let prev = b[i - 1];
                b[i] -= prev * r;
            }
            b
        };
        for _ in 0..6 {
            a = mul(&a, c(-1.0, 0.0));
        }
        a = mul(&a, c(0.0, 1.0));
        let r = polynomial_roots(&a).unwrap();
        for m in sorted_moduli(r) {
            assert!((m - 1.0).abs() < 1e-10, "{m}");
        }
    }

    #[test]
    fn zero_roots_are_exact() {
        let r = polynomial_roots(&[c(1.0, 0.0), c(-4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(sorted_moduli(r), vec![0.0, 0.0, 4.0]);
    }

    #[test]
    fn close_but_distinct_roots_stay_apart() {
        // (x-1)(x-1-1e-5)
        let e = 1e-5;
        let p = [c(1.0, 0.0), c(-2.0 - e, 0.0), c(1.0 + e, 0.0)];
        let mut r = polynomial_roots(&p).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0].re - 1.0).abs() < 1e-10 && (r[1].re - 1.0 - e).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(polynomial_roots(&[]).is_err());
        assert!(polynomial_roots(&[c(0.0, 0.0), c(1.0, 0.0)]).is_err());
    }
}
