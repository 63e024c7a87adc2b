use num_traits::Zero;

use super::{RootTuple, SymPoint};
use crate::polyalg::{QuasiHomPoly, Rational};
use crate::{Error, Result, C64};

/// Denominators of `p_{n,λ}` below this modulus are treated as vanishing.
pub const DEGENERATE_CUTOFF: f64 = 1e-14;

/// `(σ_{n,1}(t), …, σ_{n,n}(t))`, by expanding `∏(X + t_j)` after sorting the
/// roots, so permuted inputs give bit-identical outputs.
pub fn sym_map(roots: &RootTuple) -> SymPoint {
    let mut t = roots.roots().to_vec();
    t.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let n = t.len();
    let mut e = vec![C64::zero(); n + 1];
    e[0] = C64::new(1.0, 0.0);
    for (i, r) in t.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += r * prev;
        }
    }
    SymPoint::new(e[1..].to_vec())
}

/// `p_{n,λ}(z)`, with components
/// `((n−j)z_j + λ(j+1)z_{j+1}) / (n + λz_1)` for `1 ≤ j ≤ n−1`.
pub fn p_reduce(z: &SymPoint, lambda: C64) -> Result<SymPoint> {
    let n = z.n();
    if n < 2 {
        return Err(Error::InvalidArgument("p_reduce needs n >= 2".into()));
    }
    if lambda.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!("|λ| = {} > 1", lambda.norm())));
    }
    let den = n as f64 + lambda * z.get(1);
    if den.norm() < DEGENERATE_CUTOFF {
        return Err(Error::DegenerateDenominator {
            stage: n,
            modulus: den.norm(),
        });
    }
    let out = (1..n)
        .map(|j| ((n - j) as f64 * z.get(j) + lambda * (j + 1) as f64 * z.get(j + 1)) / den)
        .collect();
    Ok(SymPoint::new(out))
}

/// `f_{λ_1,…,λ_{n−1}}(z) = p_{2,λ_1} ∘ … ∘ p_{n,λ_{n−1}}(z)`.
///
/// A degenerate denominator reports the index `k` of the failing `p_{k,·}`.
pub fn f_multi(z: &SymPoint, lambdas: &[C64]) -> Result<C64> {
    let n = z.n();
    if lambdas.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: lambdas.len(),
        });
    }
    let mut cur = z.clone();
    for k in (2..=n).rev() {
        cur = p_reduce(&cur, lambdas[k - 2])?;
    }
    Ok(cur.get(1))
}

/// Closed form of `f_λ = f_{λ,…,λ}`:
/// `Σ_{j=1}^n j z_j λ^{j−1} / (n + Σ_{j=1}^{n−1} (n−j) z_j λ^j)`.
pub fn f_lambda(z: &SymPoint, lambda: C64) -> Result<C64> {
    let n = z.n();
    let mut num = C64::zero();
    let mut den = C64::new(n as f64, 0.0);
    let mut pw = C64::new(1.0, 0.0);
    for j in 1..=n {
        num += j as f64 * z.get(j) * pw;
        pw *= lambda;
        if j < n {
            den += (n - j) as f64 * z.get(j) * pw;
        }
    }
    if den.norm() < DEGENERATE_CUTOFF {
        return Err(Error::DegenerateDenominator {
            stage: n,
            modulus: den.norm(),
        });
    }
    Ok(num / den)
}

/// The `k`-th Taylor coefficient at `λ = 0` of
/// `g_z(λ) = λ f_λ(z) = Σ j z_j λ^j / (n + Σ (n−j) z_j λ^j)`.
///
/// Averaging `g_z` over the `k`-th roots of unity kills every coefficient
/// whose index is not a multiple of `k`, so this is `P_k(z)`.
pub fn gz_taylor(z: &SymPoint, k: usize) -> Result<C64> {
    let n = z.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let numer = |m: usize| if m <= n { m as f64 * z.get(m) } else { C64::zero() };
    let denom = |i: usize| if i < n { (n - i) as f64 * z.get(i) } else { C64::zero() };
    let mut a = vec![C64::zero(); k + 1];
    for m in 1..=k {
        let mut s = numer(m);
        for i in 1..m {
            s -= denom(i) * a[m - i];
        }
        a[m] = s / n as f64;
    }
    Ok(a[k])
}

/// `P_k` as an exact polynomial, by series division with polynomial
/// coefficients. It has weight `k`.
pub fn pk_polynomial(n: usize, k: usize) -> Result<QuasiHomPoly<Rational>> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let int = |v: usize| Rational::from_integer((v as i64).into());
    let inv_n = Rational::new(1.into(), (n as i64).into());
    let mut a: Vec<QuasiHomPoly<Rational>> = vec![QuasiHomPoly::zero(n)];
    for m in 1..=k {
        let mut s = QuasiHomPoly::var(n, m).scale(&int(m));
        for i in 1..m.min(n) {
            let d = QuasiHomPoly::var(n, i).scale(&int(n - i));
            s = &s - &(&d * &a[m - i]);
        }
        a.push(s.scale(&inv_n));
    }
    Ok(a.pop().expect("k >= 1"))
}
