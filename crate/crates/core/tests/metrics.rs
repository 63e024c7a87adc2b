use std::f64::consts::TAU;

use polydisc::metrics::{
    antipodal_clusters, g3_separation_report, gamma2_bounds, lemma7_certify, m_nc, p_distance, poincare,
    rho_detailed, verify_prop4_lower, weight_two_poly, DirectionVector, GammaOptions, Lemma7Mode,
    SEPARATION_MARGIN,
};
use polydisc::certopt::BoundKind;
use polydisc::numfmt::parse_complex;
use polydisc::symcore::{sym_map, RootTuple, SymPoint};
use polydisc::C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn disc_point(r: f64) -> impl Strategy<Value = C64> {
    (0.0..1.0f64, 0.0..TAU).prop_map(move |(s, a)| C64::from_polar(r * s.sqrt(), a))
}

#[test]
fn m_nc_dominates_random_boundary_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, c) in [(2, C64::new(-0.4, 0.0)), (3, C64::new(-0.2, 0.1)), (4, C64::new(0.3, -0.2))] {
        let tol = 1e-8;
        let r = m_nc(n, c, tol).unwrap();
        let p = weight_two_poly(n, c).unwrap();
        for _ in 0..10_000 {
            let theta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
            let v = p.eval(&sym_map(&RootTuple::from_angles(&theta, n))).unwrap().norm();
            assert!(v <= r.upper_bound, "n {n}: {v} > {}", r.upper_bound);
            assert!(v <= r.value + tol, "n {n}: {v} > {} + tol", r.value);
        }
    }
}

#[test]
fn gamma2_estimate_is_strictly_inside_for_odd_n() {
    for n in [3, 5, 7] {
        let g = gamma2_bounds(n, GammaOptions::default()).unwrap();
        assert!(g.lower < g.estimate && g.estimate < g.upper, "n {n}: {g:?}");
    }
}

#[test]
fn gamma2_is_two_over_n_for_even_n() {
    for n in [2, 4, 6] {
        let g = gamma2_bounds(n, GammaOptions::default()).unwrap();
        let v = 2.0 / n as f64;
        assert_eq!((g.lower, g.estimate, g.upper), (v, v, v));
    }
}

#[test]
fn extremal_witnesses_split_into_two_antipodal_groups() {
    for n in [3, 5] {
        let r = verify_prop4_lower(n, 0.0, 1e-7).unwrap();
        let roots: Vec<C64> = r.witness_roots.iter().map(|s| parse_complex(s).unwrap()).collect();
        let mut sizes = antipodal_clusters(&roots, 1e-4).expect("two clusters");
        sizes.sort();
        assert_eq!(sizes, [n / 2, n / 2 + 1]);
    }
}

#[test]
fn separation_margin_when_certified() {
    let run = lemma7_certify(Lemma7Mode::BranchBound(BoundKind::SecondOrder), None).unwrap();
    let rep = g3_separation_report(&run.certificate).unwrap();
    assert!(rep.margin > SEPARATION_MARGIN);
    let coarse = lemma7_certify(Lemma7Mode::Grid(Some(0.5)), None).unwrap();
    assert!(g3_separation_report(&coarse.certificate).is_err());
}

#[test]
fn rho_closed_form_matches_certified_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=n);
        let mut l = rng.gen_range(1..=n);
        while l == k {
            l = rng.gen_range(1..=n);
        }
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[k - 1] = C64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(0.0..TAU));
        x[l - 1] = C64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(0.0..TAU));
        let r = rho_detailed(n, &DirectionVector::new(x)).unwrap();
        let closed = r.closed_form.unwrap();
        let certified = r.certificate.unwrap().max_sample;
        assert!((closed - certified).abs() < 1e-9, "{closed} vs {certified}");
    }
}

#[test]
fn small_t_slope_of_the_distance() {
    for (n, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)] {
        let t = 1e-3;
        let mut w = vec![C64::new(0.0, 0.0); n];
        w[k - 1] = C64::new(t, 0.0);
        let d = p_distance(&SymPoint::zero(n), &SymPoint::new(w), 1e-10).unwrap();
        assert!((d.value / t - k as f64 / n as f64).abs() < 1e-2, "n {n} k {k}: {}", d.value / t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn distance_refinement_is_monotone(
        z in prop::collection::vec(disc_point(0.9), 3),
        w in prop::collection::vec(disc_point(0.9), 3),
    ) {
        let z = sym_map(&RootTuple::new(z));
        let w = sym_map(&RootTuple::new(w));
        let d = p_distance(&z, &w, 1e-6).unwrap();
        prop_assert!(d.history.windows(2).all(|h| h[0] <= h[1]));
        prop_assert_eq!(*d.history.last().unwrap(), d.value);
    }

    #[test]
    fn poincare_is_a_metric(a in disc_point(0.99), b in disc_point(0.99), c in disc_point(0.99)) {
        let ab = poincare(a, b).unwrap();
        prop_assert!((ab - poincare(b, a).unwrap()).abs() < 1e-12);
        prop_assert!(poincare(a, a).unwrap().abs() < 1e-12);
        prop_assert!(ab <= poincare(a, c).unwrap() + poincare(c, b).unwrap() + 1e-9);
    }
}
