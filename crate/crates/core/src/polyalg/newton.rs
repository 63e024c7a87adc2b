use num_traits::Zero;
use serde::Serialize;

use super::coeff::{Coeff, Rational};
use super::poly::QuasiHomPoly;

/// A power sum `p_m = Σ_j t_j^m` written in the elementary symmetric
/// coordinates `z_k = σ_{n,k}(t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSumExpr {
    pub n: usize,
    pub m: usize,
    pub expr: QuasiHomPoly<Rational>,
}

/// Newton's recursion `p_m = z_1 p_{m−1} − z_2 p_{m−2} + … + (−1)^{m−1} m z_m`,
/// with `z_k = 0` for `k > n`. Coefficients are exact.
pub fn newton_power_sum(n: usize, m: usize) -> PowerSumExpr {
    assert!(n >= 1 && m >= 1, "n and m must be positive");
    let mut sums: Vec<QuasiHomPoly<Rational>> = Vec::with_capacity(m);
    for r in 1..=m {
        let mut p = QuasiHomPoly::zero(n);
        for i in 1..r.min(n + 1) {
            let term = &QuasiHomPoly::var(n, i) * &sums[r - i - 1];
            p = if i % 2 == 1 { &p + &term } else { &p - &term };
        }
        if r <= n {
            let c = Rational::from_i64(if r % 2 == 1 { r as i64 } else { -(r as i64) });
            p = &p + &QuasiHomPoly::var(n, r).scale(&c);
        }
        sums.push(p);
    }
    PowerSumExpr {
        n,
        m,
        expr: sums.pop().expect("m >= 1"),
    }
}

/// Coefficient of `z_1 z_n` in `p_{n+1}/n`, i.e. in the function
/// `Σ_k t_k^{n+1}/n` expressed through `z`. Equals `(−1)^{n−1}(n+1)/n`.
pub fn waring_coefficient(n: usize) -> Rational {
    assert!(n >= 2, "needs n >= 2");
    let p = newton_power_sum(n, n + 1).expr;
    let mut e = vec![0u32; n];
    e[0] += 1;
    e[n - 1] += 1;
    let c = p.coefficient(&e);
    if c.is_zero() {
        c
    } else {
        c / Rational::from_i64(n as i64)
    }
}
