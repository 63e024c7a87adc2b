//! Quasi-homogeneous polynomial algebra in symmetrized coordinates, pullback
//! to exponential sums on tori, Lipschitz constants, and Newton identities.
//!
//! Weights follow the natural grading of `G_n`: the coordinate `z_j` has
//! weight `j`, so a polynomial of weight `w` satisfies
//! `P(λz_1, λ²z_2, …, λⁿz_n) = λ^w P(z)`.

mod coeff;
mod expsum;
mod newton;
mod poly;

pub use coeff::{parse_rational, ratio, rational_from_f64, Coeff, Rational};
pub use expsum::{lipschitz_with_override, pullback_torus, CompiledExpSum, ExpSum, LipschitzChoice};
pub use newton::{newton_power_sum, waring_coefficient, PowerSumExpr};
pub use poly::{monomial_weight, ComplexPoly, QuasiHomPoly};
