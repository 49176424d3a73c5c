//! Exact certification of the sharp inequality
//! `|x|_1 * |x|_inf <= ((1 + sqrt(p)) / 2) * |x|_2^2` on R^p.
//!
//! The inequality is equivalent to positive semidefiniteness of the arrowhead
//! matrix `Q_p(C)` at `C = (1 + sqrt(p)) / 2`. This crate builds that matrix
//! over exact fields, computes its leading minors three independent ways,
//! certifies the boundary spectrum and the extremal vector exactly, and
//! cross-checks everything with floating-point oracles.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod form_matrix;
pub mod minors;
pub mod oracle;

pub use error::{Error, Result};
