//! Quantum scattering off the scale-invariant potential `V = kappa / r^2` in
//! two spatial dimensions.
//!
//! The amplitude is computed twice, independently: by summing the partial-wave
//! series with the exact energy-independent phase shifts, and by evaluating a
//! dispersion integral over momentum transfers whose imaginary part has a
//! closed form in terms of `J1`. All physics is done in terms of the
//! dimensionless coupling `x` (with `x^2 = 2 m kappa / hbar^2`) and the
//! reduced amplitude `F = sqrt(2k/pi) f`; the wavenumber only enters when
//! restoring units.

pub mod classical;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod model;
pub mod numerics;
pub mod partial_waves;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use model::{AmplitudeResult, Angle, Coupling, Kinematics, Method, ReducedAmplitude};
