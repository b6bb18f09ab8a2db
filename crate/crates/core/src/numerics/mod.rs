//! Generic numerical machinery: adaptive quadrature, sequence acceleration
//! and compensated summation.

pub mod accel;
pub mod quad;
pub mod sum;

pub use accel::EpsilonTable;
pub use quad::{integrate, integrate_with_breakpoints, QuadResult};
pub use sum::CompensatedSum;
