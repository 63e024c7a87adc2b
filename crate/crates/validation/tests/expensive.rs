//! Long runs, opt-in with `cargo test --release -p polydisc-validation -- --ignored`.

use polydisc::certopt::{BoundKind, Conclusion};
use polydisc::metrics::{lemma7_certify, Lemma7Mode, LEMMA7_DECLARED_LIPSCHITZ};

#[test]
#[ignore = "about a minute on one core"]
fn lipschitz_only_decision_certifies() {
    let run = lemma7_certify(Lemma7Mode::BranchBound(BoundKind::Lipschitz), Some(LEMMA7_DECLARED_LIPSCHITZ)).unwrap();
    assert_eq!(run.certificate.conclusion, Conclusion::CertifiedBelow);
    assert!(run.certificate.upper_bound < 1.0);
}

#[test]
#[ignore = "2.5e10 evaluations, minutes even on many cores"]
fn reference_grid_certifies() {
    let run = lemma7_certify(Lemma7Mode::ReferenceGrid, Some(LEMMA7_DECLARED_LIPSCHITZ)).unwrap();
    let c = run.certificate;
    assert_eq!(c.conclusion, Conclusion::CertifiedBelow);
    assert!((c.max_sample - 0.999).abs() < 1e-6);
    assert!(c.upper_bound < 1.0);
}
