//! Invariant-metric quantities on `G_n` and the checks built from them.
//!
//! Values labelled *estimate* come from uncertified searches (the minimization
//! over `c` and the distance grids); everything else is either closed form or
//! backed by a [`Certificate`](crate::certopt::Certificate).

mod basic;
mod gamma;
mod lemma6;
mod lemma7;
mod pdist;
pub mod surd;

pub use basic::{kappa_sandwich, poincare, rho, rho_detailed, DirectionVector, KappaSandwich, RhoReport, RHO_TOLERANCE};
pub use gamma::{
    antipodal_clusters, gamma2_bounds, gamma2_lower_exact, gamma2_upper_exact, m_n_exact, m_nc, odd_extremal_polynomial,
    prop8_bound, verify_even_extremals, verify_prop2_strict, verify_prop4_lower, verify_prop4_upper,
    weight_two_poly, BoundaryPointCheck, EvenExtremals, GammaBounds, GammaOptions, MncResult, Prop2Report,
    Prop4Lower, Prop4Upper, Prop8Report, CLUSTER_RADIUS, GAMMA_CONVENTION,
};
pub use lemma6::{fc_quadratic, lemma6_constants, lemma6_fc_check, lemma6_g, FcCheck, Lemma6Constants};
pub use lemma7::{
    g3_separation_report, lemma7_certify, lemma7_expected_peaks, lemma7_polynomial, lemma7_pullback,
    reiffen2_lower, Lemma7Mode, Lemma7Run, SeparationReport, LEMMA7_DECLARED_LIPSCHITZ, SEPARATION_MARGIN,
};
pub use pdist::{p_distance, p_distance_sweep, PDistEstimate, MAX_GRID_POINTS};
