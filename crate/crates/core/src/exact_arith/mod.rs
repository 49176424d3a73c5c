//! Exact arithmetic over the rationals and over real quadratic fields
//! Q(sqrt(d)). Nothing in this module touches floating point except the
//! explicit `to_f64` conversions.

mod quad;
mod rational;
mod scalar;

pub use quad::{quad_arith, quad_make, quad_to_float, squarefree_decompose, QuadExt, QuadOp};
pub use rational::Rational;
pub use scalar::ExactScalar;
