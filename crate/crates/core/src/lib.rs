//! Computations on the symmetrized polydisc `G_n = σ_n(D^n)`.
//!
//! * [`symcore`]: the symmetrization map, membership tests and the rational
//!   maps `p_{n,λ}`, `f_λ`;
//! * [`polyalg`]: quasi-homogeneous polynomials, torus pullbacks, Newton
//!   identities;
//! * [`certopt`]: certified maximization of exponential sums over tori;
//! * [`metrics`]: invariant metrics and the quantities built on the above.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certopt;
pub mod error;
pub mod metrics;
pub mod numfmt;
pub mod polyalg;
pub mod symcore;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/membership.md")]
    mod membership {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/certified.md")]
    mod certified {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
}
