//! Numerical analysis of the operator triangle equality `|X+Y| = |X| + |Y|`.
//!
//! The equality holds exactly when a single partial isometry `U` realizes
//! both polar decompositions, `X = U|X|` and `Y = U|Y|`. This crate computes
//! absolute values and polar factors, measures the triangle defect, extracts
//! the common isometry, and records a step-by-step numerical certificate of
//! why the equality forces that isometry to exist.

pub mod cli;
pub mod dense;
pub mod error;
pub mod spectral;
pub mod triangle;

pub use dense::{Complex, Matrix, Tolerances};
pub use error::{Error, Result};
