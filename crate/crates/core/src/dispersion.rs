//! Dispersion-relation representation of the amplitude.
//!
//! With the spectral density `g(v) = x J1(x s(v)) / s(v)`, `s(v) = sqrt(v (2 pi - v))`,
//!
//! * `Im F(theta) = pi g(|theta|)` exactly (the delta-function part of the
//!   `i epsilon` prescription),
//! * `Re F(theta) = -[ PV int_0^pi g(v) sin v / (cos theta - cos v) dv + T(theta) ]`
//!   with the unphysical-region integral
//!   `T(theta) = int_0^inf x J1(x rho) / rho * sinh t / (cos theta + cosh t) dt`,
//!   `rho = sqrt(pi^2 + t^2)`.
//!
//! The overall minus sign on the real part makes this representation agree
//! with the partial-wave series, whose sign is fixed by the repulsive phase
//! shifts.
//!
//! The `epsilon -> 0` limit is taken analytically: the principal value is
//! computed by subtracting `g(|theta|)` under the integral and adding back
//! `g(|theta|) ln((1 + cos theta)/(1 - cos theta))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{AmplitudeResult, Angle, Coupling, Method, ReducedAmplitude};
use crate::numerics::{integrate_with_breakpoints, EpsilonTable};
use crate::specfun::bessel::{first_zero_index_above, j1, j1_over_z, j1_zero, j2_over_z2};
use num_complex::Complex64;

/// Panels integrated before extrapolated estimates are trusted.
const MIN_PANELS: usize = 8;
const MAX_INTERVALS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispParams {
    /// Requested absolute error of `Re F`.
    pub tol: f64,
    /// Smallest admissible `|theta|`.
    pub theta_min: f64,
    /// Required distance of `|theta|` from `pi`.
    pub theta_back_margin: f64,
    /// Maximum number of Bessel-zero panels in the oscillatory tail.
    pub tail_panels: usize,
}

impl Default for DispParams {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            theta_min: 1e-6,
            theta_back_margin: 1e-3,
            tail_panels: 200,
        }
    }
}

impl DispParams {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.theta_min > 0.0 && self.theta_back_margin > 0.0) {
            return Err(Error::Argument(
                "dispersion parameters must be positive".into(),
            ));
        }
        if self.tail_panels == 0 {
            return Err(Error::Argument("tail_panels must be positive".into()));
        }
        if self.theta_min >= PI - self.theta_back_margin {
            return Err(Error::Argument(
                "theta_min must be below pi - theta_back_margin".into(),
            ));
        }
        Ok(())
    }

    fn check_back_margin(&self, t: f64) -> Result<()> {
        if t > PI - self.theta_back_margin {
            return Err(Error::BackscatteringMargin {
                theta: t,
                margin: self.theta_back_margin,
            });
        }
        Ok(())
    }
}

/// A computed value with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Quadrature panels (tail integral) or intervals used.
    pub panels: usize,
}

fn arc(v: f64) -> f64 {
    (v * (2.0 * PI - v)).sqrt()
}

/// Spectral density `g(v) = x^2 J1(x s)/(x s)`; smooth, with `g(0) = x^2/2`.
pub fn spectral_density(x: Coupling, v: f64) -> f64 {
    let x = x.value();
    x * x * j1_over_z(x * arc(v))
}

/// `g'(v) = -x^4 (pi - v) J2(x s)/(x s)^2`.
pub fn spectral_density_derivative(x: Coupling, v: f64) -> f64 {
    let x = x.value();
    -x.powi(4) * (PI - v) * j2_over_z2(x * arc(v))
}

/// `Im F(theta) = pi x^2 J1(u)/u`, `u = x sqrt(|theta| (2 pi - |theta|))`;
/// equals `pi x^2 / 2` at `theta = 0`.
pub fn im_reduced_amplitude(x: Coupling, theta: Angle) -> f64 {
    PI * spectral_density(x, theta.abs())
}

/// Integrand of the regularised principal-value integral,
/// `[g(v) - g(t)] sin v / (cos t - cos v)`, with its limit `g'(t)` at `v = t`.
pub fn subtracted_integrand(x: Coupling, t: f64, v: f64) -> f64 {
    let d = v - t;
    if d.abs() < 1e-9 {
        return spectral_density_derivative(x, t);
    }
    let denom = 2.0 * (0.5 * (v + t)).sin() * (0.5 * d).sin();
    (spectral_density(x, v) - spectral_density(x, t)) * v.sin() / denom
}

/// `PV int_0^pi sin v / (cos t - cos v) dv = ln((1 + cos t)/(1 - cos t))`.
fn pv_weight(t: f64) -> f64 {
    -2.0 * (0.5 * t).tan().ln()
}

/// The principal-value integral over physical momentum transfers,
/// `PV int_0^pi g(v) sin v / (cos theta - cos v) dv`.
pub fn principal_value_integral(x: Coupling, theta: Angle, tol: f64) -> Estimate {
    let t = theta.abs();
    let f = |v: f64| subtracted_integrand(x, t, v);
    let r = integrate_with_breakpoints(f, &[0.0, t, PI], tol, MAX_INTERVALS);
    Estimate {
        value: r.value + spectral_density(x, t) * pv_weight(t),
        error: r.error,
        panels: r.intervals,
    }
}

/// `sinh t / (cos theta + cosh t)` without overflow or cancellation, given
/// `one_plus_cos = 1 + cos theta`.
fn hyperbolic_weight(tau: f64, one_plus_cos: f64) -> f64 {
    let e = (-tau).exp();
    let one_minus_e = -(-tau).exp_m1();
    one_minus_e * (1.0 + e) / (one_minus_e * one_minus_e + 2.0 * one_plus_cos * e)
}

/// The integral over unphysical momentum transfers, `T(theta)`.
///
/// An initial segment up to the first zero of the Bessel factor is
/// integrated adaptively; beyond it the integral is split at consecutive
/// zeros of `J1(x rho)` and the alternating panel sums are extrapolated
/// with Wynn's epsilon algorithm.
pub fn tail_integral(x: Coupling, theta: Angle, params: &DispParams) -> Result<Estimate> {
    params.validate()?;
    let xv = x.require_interacting()?;
    let t = theta.abs();
    params.check_back_margin(t)?;

    let half = 0.5 * t;
    let one_plus_cos = 2.0 * half.cos() * half.cos();
    let integrand = |tau: f64| {
        let rho = PI.hypot(tau);
        xv * j1(xv * rho) / rho * hyperbolic_weight(tau, one_plus_cos)
    };
    // zero of J1(x rho) expressed in tau
    let node = |n: usize| {
        let r = j1_zero(n) / xv;
        ((r - PI) * (r + PI)).sqrt()
    };

    let first = first_zero_index_above(xv * PI);
    let start = node(first);
    let mut breaks = vec![0.0];
    let margin = PI - t;
    for p in [margin, 10.0 * margin, 1.0] {
        if p < start && p > *breaks.last().unwrap() {
            breaks.push(p);
        }
    }
    breaks.push(start);
    let panel_tol = 0.01 * params.tol;
    let head = integrate_with_breakpoints(integrand, &breaks, panel_tol, MAX_INTERVALS);
    let mut quad_err = head.error;

    let mut table = EpsilonTable::new();
    let mut partial = head.value;
    table.push(partial);
    let mut lo = start;
    for k in 0..params.tail_panels {
        let hi = node(first + k + 1);
        let r = integrate_with_breakpoints(integrand, &[lo, hi], panel_tol, MAX_INTERVALS);
        quad_err += r.error;
        partial += r.value;
        table.push(partial);
        lo = hi;
        let panels = k + 1;
        if panels >= MIN_PANELS {
            let extrap_err = table.error();
            let total = extrap_err + quad_err;
            if total <= params.tol {
                return Ok(Estimate {
                    value: table.estimate().unwrap_or(partial),
                    error: total,
                    panels,
                });
            }
        }
    }
    let estimate = table.estimate().unwrap_or(partial);
    Err(Error::Accuracy {
        estimate,
        achieved: table.error() + quad_err,
        requested: params.tol,
    })
}

/// `Re F(theta)` from the dispersion relation.
pub fn re_reduced_amplitude(x: Coupling, theta: Angle, params: &DispParams) -> Result<Estimate> {
    params.validate()?;
    x.require_interacting()?;
    let t = theta.abs();
    if t < params.theta_min {
        return Err(Error::ForwardDivergence {
            theta: theta.radians(),
        });
    }
    params.check_back_margin(t)?;
    let tail = tail_integral(x, theta, params)?;
    let pv = principal_value_integral(x, theta, 0.25 * params.tol);
    Ok(Estimate {
        value: -(pv.value + tail.value),
        error: pv.error + tail.error,
        panels: tail.panels,
    })
}

/// Full reduced amplitude from the dispersion relation.
pub fn reduced_amplitude(
    x: Coupling,
    theta: Angle,
    params: &DispParams,
) -> Result<AmplitudeResult> {
    let re = re_reduced_amplitude(x, theta, params)?;
    let im = im_reduced_amplitude(x, theta);
    Ok(AmplitudeResult {
        theta,
        value: ReducedAmplitude(Complex64::new(re.value, im)),
        method: Method::Dispersion,
        err_estimate: re.error + 4.0 * f64::EPSILON * im.abs(),
        terms_or_panels: re.panels,
    })
}
