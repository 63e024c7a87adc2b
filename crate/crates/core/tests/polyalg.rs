use std::f64::consts::TAU;

use num_traits::Signed;
use polydisc::polyalg::{
    newton_power_sum, pullback_torus, ratio, waring_coefficient, ExpSum, QuasiHomPoly, Rational,
};
use polydisc::symcore::{pk_polynomial, sym_map, RootTuple, SymPoint};
use polydisc::C64;
use proptest::prelude::*;

fn disc_point() -> impl Strategy<Value = C64> {
    (0.0..1.0f64, 0.0..TAU).prop_map(|(r, a)| C64::from_polar(r.sqrt(), a))
}

fn angles(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..TAU, m)
}

fn torus_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(TAU);
            d.min(TAU - d)
        })
        .fold(0.0, f64::max)
}

#[test]
fn waring_coefficients_are_exact() {
    for n in 2..=8usize {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(waring_coefficient(n), ratio(sign * (n as i64 + 1), n as i64), "n = {n}");
    }
}

/// `z_2 + c z_1²` built by hand for the pullback checks.
fn weight_two(n: usize, c: C64) -> QuasiHomPoly<C64> {
    let mut a = vec![0; n];
    a[1] = 1;
    let mut b = vec![0; n];
    b[0] = 2;
    QuasiHomPoly::from_terms(n, [(a, C64::new(1.0, 0.0)), (b, c)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_sums_evaluate_correctly(
        n in 2usize..=8,
        extra in 0usize..=2,
        seed in prop::collection::vec(disc_point(), 8),
    ) {
        let t = &seed[..n];
        let z = sym_map(&RootTuple::new(t.to_vec()));
        for m in 1..=n + extra {
            let p = newton_power_sum(n, m);
            prop_assert!(p.expr.has_weight(m as u32));
            let want: C64 = t.iter().map(|x| x.powi(m as i32)).sum();
            let got = p.expr.eval(&z).unwrap();
            // scale of the evaluation: |coefficients| at |z|
            let modulus = p.expr.map_coeffs(|c: &Rational| c.abs());
            let zabs = SymPoint::new(z.coords().iter().map(|x| C64::new(x.norm(), 0.0)).collect());
            let scale = modulus.eval(&zabs).unwrap().re.max(1.0);
            prop_assert!((got - want).norm() <= 1e-14 * scale, "n {n} m {m}: {got} vs {want}");
        }
    }

    #[test]
    fn reduced_pullback_agrees_with_substitution(
        n in 2usize..=6,
        k in 1usize..=6,
        theta in angles(5),
    ) {
        let k = k.min(n);
        let p = pk_polynomial(n, k).unwrap();
        let f = pullback_torus(&p, true).unwrap();
        prop_assert_eq!(f.dim(), n - 1);
        let th = &theta[..n - 1];
        let z = sym_map(&RootTuple::from_angles(th, n));
        let want = p.eval(&z).unwrap();
        let got = f.eval(th);
        prop_assert!((got - want).norm() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn full_pullback_agrees_with_substitution(n in 2usize..=5, re in -1.0..1.0f64, im in -1.0..1.0f64, theta in angles(5)) {
        let p = weight_two(n, C64::new(re, im));
        let f = pullback_torus(&p, false).unwrap();
        let th = &theta[..n];
        let z = sym_map(&RootTuple::from_angles(th, n));
        prop_assert!((f.eval(th) - p.eval(&z).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn reduction_keeps_the_modulus(n in 2usize..=5, re in -1.0..1.0f64, theta in angles(5)) {
        let p = weight_two(n, C64::new(re, 0.3));
        let full = pullback_torus(&p, false).unwrap();
        let reduced = pullback_torus(&p, true).unwrap();
        let th = &theta[..n];
        let shifted: Vec<f64> = th[..n - 1].iter().map(|a| a - th[n - 1]).collect();
        prop_assert!((full.eval(th).norm() - reduced.eval(&shifted).norm()).abs() < 1e-12);
    }

    #[test]
    fn generic_lipschitz_bound_holds(
        n in 2usize..=6,
        k in 1usize..=6,
        a in angles(5),
        b in angles(5),
    ) {
        let p = pk_polynomial(n, k.min(n)).unwrap();
        let f: ExpSum = pullback_torus(&p, true).unwrap();
        let (a, b) = (&a[..n - 1], &b[..n - 1]);
        let lhs = (f.eval(a) - f.eval(b)).norm();
        prop_assert!(lhs <= f.lipschitz_bound() * torus_dist(a, b) + 1e-12);
    }

    #[test]
    fn weight_is_detected(w in prop::collection::vec(disc_point(), 4), t in disc_point()) {
        let p = newton_power_sum(4, 3).expr;
        let w = SymPoint::new(w);
        let tw = SymPoint::new((1..=4).map(|j| t.powi(j as i32) * w.get(j)).collect());
        let lhs = p.eval(&tw).unwrap();
        let rhs = t.powi(3) * p.eval(&w).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }
}
