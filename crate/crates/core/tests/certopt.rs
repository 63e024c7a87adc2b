use std::f64::consts::{PI, TAU};

use polydisc::certopt::{
    bb_maximize, critical_scan, grid_certify, h_value, minimize_1d, AngleSymmetry, BbOptions, Conclusion,
    Interval1D,
};
use polydisc::metrics::{lemma7_certify, lemma7_pullback, Lemma7Mode, LEMMA7_DECLARED_LIPSCHITZ};
use polydisc::polyalg::{pullback_torus, ExpSum};
use polydisc::symcore::pk_polynomial;
use polydisc::C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn certified_bound_dominates_random_samples() {
    let run = lemma7_certify(Lemma7Mode::BranchBound(polydisc::certopt::BoundKind::SecondOrder), None).unwrap();
    let cert = run.certificate;
    assert_eq!(cert.conclusion, Conclusion::CertifiedBelow);
    let g = lemma7_pullback();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0.0f64;
    for _ in 0..100_000 {
        let x = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
        let v = g.eval(&x).norm();
        seen = seen.max(v);
        assert!(v <= cert.upper_bound, "{v} > {}", cert.upper_bound);
    }
    assert!(seen <= cert.max_sample + 1e-12);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let g = lemma7_pullback();
    let l = LEMMA7_DECLARED_LIPSCHITZ;
    let reference = in_pool(1, || bb_maximize(&g, l, Some(1.0), 1e-9, &BbOptions::default()).unwrap());
    for threads in [2, 8] {
        let c = in_pool(threads, || bb_maximize(&g, l, Some(1.0), 1e-9, &BbOptions::default()).unwrap());
        assert_eq!(reference.without_timing().to_json(), c.without_timing().to_json());
    }
    let grid1 = in_pool(1, || grid_certify(&g, l, 1.0, 2e-4).unwrap());
    let grid8 = in_pool(8, || grid_certify(&g, l, 1.0, 2e-4).unwrap());
    assert_eq!(grid1.without_timing().to_json(), grid8.without_timing().to_json());
}

#[test]
fn grid_and_branch_and_bound_agree() {
    let p = pk_polynomial(4, 3).unwrap();
    let f = pullback_torus(&p, true).unwrap();
    let l = f.lipschitz_bound();
    let bb = bb_maximize(&f, l, None, 1e-8, &BbOptions::default()).unwrap();
    let grid = grid_certify(&f, l, 2.0, 0.02).unwrap();
    assert!(grid.max_sample <= bb.upper_bound + 1e-12);
    assert!(bb.max_sample <= grid.upper_bound);
}

fn max_with(f: &ExpSum, symmetry: AngleSymmetry) -> f64 {
    let opts = BbOptions {
        symmetry,
        ..BbOptions::default()
    };
    bb_maximize(f, f.lipschitz_bound(), None, 1e-7, &opts).unwrap().max_sample
}

#[test]
fn symmetry_reduction_keeps_the_maximum() {
    for (n, k) in [(3, 2), (4, 3), (5, 2), (5, 3)] {
        let f = pullback_torus(&pk_polynomial(n, k).unwrap(), true).unwrap();
        let full = max_with(&f, AngleSymmetry::None);
        for s in [AngleSymmetry::Sorted, AngleSymmetry::Circular, AngleSymmetry::CircularReflect] {
            let reduced = max_with(&f, s);
            assert!((full - reduced).abs() < 2e-7, "n {n} k {k} {s:?}: {full} vs {reduced}");
        }
    }
}

#[test]
fn asymmetric_functions_are_rejected() {
    let f = ExpSum::from_terms(2, [(vec![1, 0], C64::new(1.0, 0.0)), (vec![0, 2], C64::new(0.5, 0.0))]).unwrap();
    let opts = BbOptions {
        symmetry: AngleSymmetry::Sorted,
        ..BbOptions::default()
    };
    assert!(bb_maximize(&f, f.lipschitz_bound(), None, 1e-6, &opts).is_err());
}

/// All ways of pinning one of the points `θ ∪ {0}` at angle 0, in either
/// orientation, with the remaining angles sorted.
fn pinnings(theta: &[f64], both_orientations: bool) -> Vec<Vec<f64>> {
    let mut pts: Vec<f64> = theta.to_vec();
    pts.push(0.0);
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for s in [1.0, -1.0] {
            if s < 0.0 && !both_orientations {
                continue;
            }
            let mut rep: Vec<f64> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| (s * (q - p)).rem_euclid(TAU))
                .collect();
            rep.sort_by(f64::total_cmp);
            out.push(rep);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reduced_domain_keeps_a_representative(theta in prop::collection::vec(0.0..TAU, 1..=6)) {
        let half = vec![1e-9; theta.len()];
        let mut sorted = theta.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assert!(AngleSymmetry::Sorted.meets(&sorted, &half));
        prop_assert!(pinnings(&theta, false).iter().any(|r| AngleSymmetry::Circular.meets(r, &half)));
        prop_assert!(pinnings(&theta, true).iter().any(|r| AngleSymmetry::CircularReflect.meets(r, &half)));
    }

    #[test]
    fn reduced_domain_is_a_proper_subset(theta in prop::collection::vec(0.0..TAU, 2..=6)) {
        let half = vec![1e-9; theta.len()];
        let kept = pinnings(&theta, true).iter().filter(|r| AngleSymmetry::CircularReflect.meets(r, &half)).count();
        prop_assert!(kept < 2 * (theta.len() + 1));
    }

    #[test]
    fn golden_section_finds_the_vertex_of_convex_functions(a in 0.05..0.95f64, s in 0.1..10.0f64, t in 0.1..10.0f64) {
        let f = |x: f64| if x < a { s * (a - x) } else { t * (x - a) } + (x - a).powi(2);
        let r = minimize_1d(f, Interval1D::new(0.0, 1.0).unwrap(), 1e-9).unwrap();
        prop_assert!((r.x - a).abs() < 1e-8, "{} vs {a}", r.x);
    }
}

#[test]
fn critical_scan_finds_the_lattice_family() {
    let c = (13f64.sqrt() - 1.0) / 12.0;
    let pts = critical_scan(c, 16, 1e-10).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut want = [i as f64 * PI, j as f64 * PI, k as f64 * PI];
                want.sort_by(f64::total_cmp);
                let found = pts.iter().any(|p| {
                    let mut a = p.angles.clone();
                    a.sort_by(f64::total_cmp);
                    p.lattice && a.iter().zip(&want).all(|(x, y)| (x - y).abs() < 1e-9)
                });
                assert!(found, "{want:?} missing");
            }
        }
    }
    for p in &pts {
        assert!(p.grad_norm <= 1e-10);
        let a = [p.angles[0], p.angles[1], p.angles[2]];
        assert!((h_value(c, &a) - p.value).abs() < 1e-12);
    }
    let best = pts.iter().map(|p| p.value).fold(f64::NEG_INFINITY, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20_000 {
        let x = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
        assert!(h_value(c, &x) <= best + 1e-12);
    }
}
