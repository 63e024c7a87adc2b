use std::f64::consts::TAU;

use polydisc::symcore::{
    classify_point, f_lambda, f_multi, gz_taylor, membership_via_flambda, pk_polynomial, sym_map, RootTuple,
    SymPoint, VerdictKind,
};
use polydisc::C64;
use proptest::prelude::*;

fn disc_point() -> impl Strategy<Value = C64> {
    (0.0..1.0f64, 0.0..TAU).prop_map(|(r, a)| C64::from_polar(r.sqrt(), a))
}

fn roots(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<C64>> {
    n.prop_flat_map(|n| prop::collection::vec(disc_point(), n))
}

fn close(a: C64, b: C64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn shrunken_roots_classify_inside(t in roots(1..=8), s in 0.0..0.999f64) {
        let t: Vec<C64> = t.into_iter().map(|x| x * s).collect();
        let v = classify_point(&sym_map(&RootTuple::new(t)), 1e-9).unwrap();
        prop_assert_eq!(v.kind, VerdictKind::Inside);
    }

    #[test]
    fn margin_matches_largest_root(t in roots(1..=7), big in 1.01..3.0f64, a in 0.0..TAU) {
        let mut t = t;
        t[0] = C64::from_polar(big, a);
        let want = t.iter().map(|x| x.norm()).fold(0.0, f64::max) - 1.0;
        let v = classify_point(&sym_map(&RootTuple::new(t)), 1e-9).unwrap();
        prop_assert_eq!(v.kind, VerdictKind::Outside);
        prop_assert!((v.margin - want).abs() < 1e-8, "{} vs {}", v.margin, want);
    }

    #[test]
    fn sym_map_ignores_root_order(t in roots(1..=8), k in 0usize..64) {
        let mut u = t.clone();
        let len = u.len();
        u.rotate_left(k % len);
        u.reverse();
        prop_assert_eq!(sym_map(&RootTuple::new(t)), sym_map(&RootTuple::new(u)));
    }

    #[test]
    fn f_multi_on_the_diagonal_is_f_lambda(t in roots(2..=7), l in disc_point()) {
        let z = sym_map(&RootTuple::new(t));
        let ls = vec![l; z.n() - 1];
        let a = f_multi(&z, &ls).unwrap();
        let b = f_lambda(&z, l).unwrap();
        prop_assert!(close(a, b, 1e-12), "{a} vs {b}");
    }

    #[test]
    fn pk_on_the_torus_is_at_most_one(theta in prop::collection::vec(0.0..TAU, 1..=8)) {
        let n = theta.len();
        let z = sym_map(&RootTuple::from_angles(&theta, n));
        for k in 1..=n {
            let v = gz_taylor(&z, k).unwrap();
            prop_assert!(v.norm() <= 1.0 + 1e-12, "k = {k}: {}", v.norm());
        }
    }

    #[test]
    fn pk_polynomial_matches_taylor_coefficient(t in roots(1..=6), scale in 0.1..2.0f64) {
        let z = sym_map(&RootTuple::new(t)).scaled(scale);
        for k in 1..=z.n() {
            let p = pk_polynomial(z.n(), k).unwrap();
            prop_assert!(p.has_weight(k as u32));
            let a = p.eval(&z).unwrap();
            let b = gz_taylor(&z, k).unwrap();
            prop_assert!(close(a, b, 1e-12), "k = {k}: {a} vs {b}");
        }
    }

    #[test]
    fn pk_is_quasi_homogeneous(w in roots(3..=3), t in disc_point()) {
        let w = SymPoint::new(w);
        let tw = SymPoint::new((1..=3).map(|j| t.powi(j as i32) * w.get(j)).collect());
        for k in 1..=3 {
            let p = pk_polynomial(3, k).unwrap();
            let lhs = p.eval(&tw).unwrap();
            let rhs = t.powi(k as i32) * p.eval(&w).unwrap();
            prop_assert!(close(lhs, rhs, 1e-12));
        }
    }

    #[test]
    fn flambda_oracle_agrees_away_from_the_boundary(t in roots(2..=5), s in prop_oneof![0.0..0.95f64, 1.05..2.0f64]) {
        let t: Vec<C64> = t.into_iter().map(|x| x * s).collect();
        let rmax = t.iter().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assume!((rmax - 1.0).abs() > 0.02);
        let outside = rmax > 1.0;
        let z = sym_map(&RootTuple::new(t));
        let by_roots = classify_point(&z, 1e-6).unwrap();
        let by_f = membership_via_flambda(&z, 8 * z.n(), 1e-6).unwrap();
        prop_assert_eq!(by_roots.kind == VerdictKind::Inside, !outside);
        prop_assert_eq!(by_f.kind == VerdictKind::Inside, !outside);
    }
}
