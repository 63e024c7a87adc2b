//! Certified maximization of `|F|` for exponential sums `F` on tori.
//!
//! Two certifiers share the [`Certificate`] output type:
//!
//! * [`grid_certify`] samples a uniform grid of covering radius `step/2` and
//!   certifies `|F| < τ` when `max_sample + L·step/2 < τ`;
//! * [`bb_maximize`] runs a deterministic branch-and-bound whose box bounds
//!   come from the Lipschitz constant and, optionally, a second-order Taylor
//!   bound at the box center.
//!
//! [`minimize_1d`] and [`critical_scan`] are uncertified numerical helpers.

mod certificate;
mod critical;
pub mod engine;
mod grid;
mod min1d;
mod torus;

pub use certificate::{CertMode, Certificate, Conclusion, Peak};
pub use critical::{critical_scan, h_value, CriticalPoint};
pub use engine::{AngleSymmetry, PeakSettings};
pub use grid::{grid_certify, grid_certify_spec, GridSpec};
pub use min1d::{minimize_1d, Interval1D, Min1d};
pub use torus::{bb_maximize, polish_max, rounding_slack, BbOptions, BoundKind, TorusObjective};
