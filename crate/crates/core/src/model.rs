//! Domain types and the kinematic formulas that connect the dimensionless
//! description (coupling `x`, angle `theta`) to physical units.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensionless coupling `x`, with `x^2 = 2 m kappa / hbar^2`.
///
/// `x = 0` is the free particle and is accepted as a degenerate case.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Argument(format!(
                "coupling must be finite and nonnegative, got {x}"
            )));
        }
        Ok(Self(x))
    }

    /// `x = sqrt(2 m kappa) / hbar`. Mass and `hbar` must be positive;
    /// `kappa = 0` gives the free particle, negative `kappa` is rejected.
    pub fn from_physical(mass: f64, kappa: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Argument(format!("{name} must be positive, got {v}")));
            }
        }
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::Argument(format!(
                "kappa must be nonnegative (attractive couplings are not supported), got {kappa}"
            )));
        }
        Self::new((2.0 * mass * kappa).sqrt() / hbar)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_free(self) -> bool {
        self.0 == 0.0
    }

    /// Error unless `x > 0`.
    pub(crate) fn require_interacting(self) -> Result<f64> {
        if self.0 > 0.0 {
            Ok(self.0)
        } else {
            Err(Error::Argument(format!(
                "operation requires a positive coupling, got x = {}",
                self.0
            )))
        }
    }
}

/// Physical parameters that fix the wavenumber through `E = hbar^2 k^2 / 2m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalScale {
    pub mass: f64,
    pub hbar: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    k: f64,
    physical: Option<PhysicalScale>,
}

impl Kinematics {
    pub fn new(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::Argument(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        Ok(Self { k, physical: None })
    }

    /// `k = sqrt(2 m E) / hbar`.
    pub fn from_physical(mass: f64, hbar: f64, energy: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("hbar", hbar), ("energy", energy)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Argument(format!("{name} must be positive, got {v}")));
            }
        }
        let k = (2.0 * mass * energy).sqrt() / hbar;
        Ok(Self {
            k,
            physical: Some(PhysicalScale { mass, hbar, energy }),
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn physical(&self) -> Option<PhysicalScale> {
        self.physical
    }
}

/// Scattering angle in `[-pi, pi]`. Out-of-range input is rejected, not wrapped.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta.abs() > PI {
            return Err(Error::Argument(format!(
                "angle must lie in [-pi, pi], got {theta}"
            )));
        }
        Ok(Self(theta))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn abs(self) -> f64 {
        self.0.abs()
    }

    /// `sqrt(|theta| (2 pi - |theta|))`, the combination every closed form
    /// is written in.
    pub fn arc_measure(self) -> f64 {
        let t = self.0.abs();
        (t * (2.0 * PI - t)).sqrt()
    }
}

/// `F(theta) = sqrt(2k/pi) f(theta)`, dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedAmplitude(pub Complex64);

impl ReducedAmplitude {
    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PartialWave,
    Dispersion,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::PartialWave, Method::Dispersion, Method::Asymptotic];

    pub fn name(self) -> &'static str {
        match self {
            Method::PartialWave => "partial_wave",
            Method::Dispersion => "dispersion",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partial_wave" | "pw" => Ok(Method::PartialWave),
            "dispersion" | "disp" => Ok(Method::Dispersion),
            "asymptotic" | "asym" => Ok(Method::Asymptotic),
            other => Err(Error::Argument(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeResult {
    pub theta: Angle,
    pub value: ReducedAmplitude,
    pub method: Method,
    /// Estimated absolute error of `value`, in both components.
    pub err_estimate: f64,
    /// Partial waves summed explicitly, or quadrature panels used.
    pub terms_or_panels: usize,
}

/// `|k_in - k_out|^2 = 2 k^2 (1 - cos theta)`, in 1/length^2.
pub fn momentum_transfer_sq(k: f64, theta: Angle) -> f64 {
    // 1 - cos t = 2 sin^2(t/2), without cancellation near 0
    let s = (0.5 * theta.radians()).sin();
    4.0 * k * k * s * s
}

/// `dsigma/dtheta = |f|^2 = (pi / 2k) |F|^2`.
pub fn dcs_from_reduced(amplitude: ReducedAmplitude, k: f64) -> f64 {
    PI / (2.0 * k) * amplitude.norm_sqr()
}

/// Integrated cross-section `sigma = pi^2 x^2 / k`.
pub fn sigma_closed_form(x: Coupling, k: f64) -> f64 {
    PI * PI * x.value() * x.value() / k
}
