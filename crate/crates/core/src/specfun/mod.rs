//! Special functions on the nonnegative real axis and the unit circle.

pub mod bessel;
pub mod polylog;
pub mod zeta;

pub use bessel::{bessel_j0, bessel_j1, j1_positive_zeros, j1_zero};
pub use polylog::{polylog_tail, polylog_unit_circle};
