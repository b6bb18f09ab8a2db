//! Partial-wave representation of the amplitude.
//!
//! The phase shifts are energy independent,
//! `delta_l = (pi/2) (|l| - sqrt(l^2 + x^2))`, and
//!
//! ```text
//! F(theta) = (2/pi) [a_0 + 2 sum_{l>=1} cos(l theta) a_l],   a_l = e^{i delta_l} sin(delta_l).
//! ```
//!
//! Since `a_l ~ -pi x^2 / (4 l)` the series converges only conditionally. The
//! terms beyond the explicit cutoff `L` are replaced by their large-`l`
//! expansion `c_1/l + c_2/l^2 + c_3/l^3`, whose cosine sums are closed-form
//! polylogarithms on the unit circle.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{AmplitudeResult, Angle, Coupling, Method, ReducedAmplitude};
use crate::numerics::CompensatedSum;
use crate::specfun::zeta::hurwitz_zeta;
use crate::specfun::{polylog_tail, polylog_unit_circle};

/// Highest order of the `1/l` expansion of `a_l` resummed in closed form.
pub const MAX_TAIL_ORDER: u32 = 3;

/// Order of the `1/l` expansion of `sin^2 delta_l` used for the
/// cross-section tail.
const SIGMA_SERIES_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PwParams {
    /// Partial waves `1..=l_max` are summed explicitly.
    pub l_max: usize,
    /// Number of `1/l` tail terms resummed, `0..=3`.
    pub tail_order: u32,
}

impl PwParams {
    /// Defaults for a given coupling: `l_max = max(2048, ceil(32 x^2))`,
    /// full tail resummation.
    pub fn for_coupling(x: Coupling) -> Self {
        let x2 = x.value() * x.value();
        Self {
            l_max: 2048usize.max((32.0 * x2).ceil() as usize),
            tail_order: MAX_TAIL_ORDER,
        }
    }

    fn validate(&self, x: f64) -> Result<()> {
        if self.l_max == 0 {
            return Err(Error::Argument("l_max must be at least 1".into()));
        }
        if self.tail_order > MAX_TAIL_ORDER {
            return Err(Error::Argument(format!(
                "tail_order must be at most {MAX_TAIL_ORDER}, got {}",
                self.tail_order
            )));
        }
        if self.tail_order > 0 && (self.l_max as f64) <= x {
            return Err(Error::Argument(format!(
                "l_max = {} is too small for the 1/l tail expansion at x = {x}",
                self.l_max
            )));
        }
        Ok(())
    }
}

/// `delta_l = (pi/2)(|l| - sqrt(l^2 + x^2))`, written without cancellation.
pub fn phase_shift(x: Coupling, l: i64) -> f64 {
    let x = x.value();
    let l = l.unsigned_abs() as f64;
    -FRAC_PI_2 * x * x / (l + l.hypot(x))
}

/// `a_l = e^{i delta} sin(delta)`.
fn partial_amplitude(delta: f64) -> Complex64 {
    let (s, c) = delta.sin_cos();
    Complex64::new(s * c, s * s)
}

/// Truncated power series in `y = 1/l`; index is the power.
mod series {
    pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = a.len();
        let mut out = vec![0.0; n];
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0.0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(n - i) {
                out[i + j] += ai * bj;
            }
        }
        out
    }

    /// `delta(y) = -(pi/2) (sqrt(1 + x^2 y^2) - 1) / y`
    pub fn phase_shift(x: f64, order: usize) -> Vec<f64> {
        let mut d = vec![0.0; order + 1];
        // binomial(1/2, n) x^(2n) y^(2n-1)
        let mut binom = 1.0;
        let mut xpow = 1.0;
        let x2 = x * x;
        let mut n = 1;
        while 2 * n - 1 <= order {
            binom *= (0.5 - (n - 1) as f64) / n as f64;
            xpow *= x2;
            d[2 * n - 1] = -std::f64::consts::FRAC_PI_2 * binom * xpow;
            n += 1;
        }
        d
    }

    /// `(sin(2 delta)/2, sin^2(delta))` as series, given `delta` with no
    /// constant term.
    pub fn amplitude_parts(delta: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = delta.len();
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        // power = delta^p, coef = 2^(p-1) / p!
        let mut power = delta.to_vec();
        let mut coef = 1.0;
        for p in 1..n {
            if p > 1 {
                power = mul(&power, delta);
                coef *= 2.0 / p as f64;
            }
            // sin(2d)/2 = sum_m (-1)^m 2^(2m) d^(2m+1)/(2m+1)!
            // sin^2 d   = sum_m (-1)^(m+1) 2^(2m-1) d^(2m)/(2m)!
            let (target, sign) = match p % 4 {
                1 => (&mut re, 1.0),
                2 => (&mut im, 1.0),
                3 => (&mut re, -1.0),
                _ => (&mut im, -1.0),
            };
            for (t, v) in target.iter_mut().zip(&power) {
                *t += sign * coef * v;
            }
        }
        (re, im)
    }
}

/// Coefficients `c_s` (index `s`, `c_0 = 0`) of `a_l = sum_s c_s / l^s`
/// for `l > x`.
pub fn tail_coefficients(x: Coupling, order: usize) -> Vec<Complex64> {
    let delta = series::phase_shift(x.value(), order);
    let (re, im) = series::amplitude_parts(&delta);
    re.into_iter()
        .zip(im)
        .map(|(r, i)| Complex64::new(r, i))
        .collect()
}

/// Bound on `|sum_{l>L} cos(l t) / l^s|` from absolute convergence (s >= 2)
/// and from summation by parts.
fn cosine_tail_bound(s: u32, t: f64, l_max: usize) -> f64 {
    let next = (l_max + 1) as f64;
    let abel = next.powi(-(s as i32)) / (0.5 * t).sin().abs();
    if s >= 2 {
        abel.min(hurwitz_zeta(s as f64, next))
    } else {
        abel
    }
}

/// Reduced amplitude from the partial-wave series with polylogarithmic
/// tail resummation.
///
/// `theta = 0` is rejected because `Re F` diverges logarithmically there.
pub fn reduced_amplitude(x: Coupling, theta: Angle, params: &PwParams) -> Result<AmplitudeResult> {
    let xv = x.require_interacting()?;
    params.validate(xv)?;
    let t = theta.abs();
    if t == 0.0 {
        return Err(Error::ForwardDivergence { theta: 0.0 });
    }
    let order = params.tail_order as usize;
    let l_max = params.l_max;

    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    // partial sums of cos(l t) / l^s, s = 1..=order
    let mut cos_sums = [CompensatedSum::new(); MAX_TAIL_ORDER as usize];
    for l in 1..=l_max {
        let c = (l as f64 * t).cos();
        let a = partial_amplitude(phase_shift(x, l as i64));
        re += c * a.re;
        im += c * a.im;
        let inv = 1.0 / l as f64;
        let mut p = c;
        for s in cos_sums.iter_mut().take(order) {
            p *= inv;
            *s += p;
        }
    }

    let a0 = partial_amplitude(phase_shift(x, 0));
    let mut total = a0 + 2.0 * Complex64::new(re.value(), im.value());

    let coeffs = tail_coefficients(x, order + 3);
    let mut err = 0.0;
    for s in 1..=order {
        let remainder = match polylog_tail(s as u32, t, l_max) {
            Some(direct) => {
                err += 2.0 * coeffs[s].norm() * 16.0 * f64::EPSILON * direct.norm();
                direct.re
            }
            None => {
                // rounding in the difference of two O(log L) quantities
                err += 2.0 * coeffs[s].norm() * 8.0 * f64::EPSILON * (1.0 + (l_max as f64).ln());
                polylog_unit_circle(s as u32, t)?.re - cos_sums[s - 1].value()
            }
        };
        total += 2.0 * coeffs[s] * remainder;
    }
    for (s, c) in coeffs.iter().enumerate().skip(order + 1).take(3) {
        err += 2.0 * c.norm() * cosine_tail_bound(s as u32, t, l_max);
    }
    // rounding in the explicit sum
    err += 4.0 * f64::EPSILON * (1.0 + l_max as f64).sqrt();

    let scale = 2.0 / PI;
    Ok(AmplitudeResult {
        theta,
        value: ReducedAmplitude(scale * total),
        method: Method::PartialWave,
        err_estimate: scale * err,
        terms_or_panels: l_max,
    })
}

/// `sin^2(delta_l)` for `l >= 0`.
fn sin2_phase(x: Coupling, l: i64) -> f64 {
    let s = phase_shift(x, l).sin();
    s * s
}

/// The cross-section sum `S = sum_{l in Z} sin^2(delta_l)` (so that
/// `sigma = 4 S / k`), together with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaSum {
    pub value: f64,
    pub err_estimate: f64,
    pub l_max: usize,
}

/// `sin^2(delta_0) + 2 sum_{l=1}^{L} sin^2(delta_l)`, no tail.
pub fn sigma_partial_sum(x: Coupling, l_max: usize) -> f64 {
    let mut s = CompensatedSum::new();
    for l in 1..=l_max {
        s += sin2_phase(x, l as i64);
    }
    sin2_phase(x, 0) + 2.0 * s.value()
}

/// `S` summed explicitly to `l_max` plus the tail
/// `sum_{l>L} sin^2(delta_l) = sum_k d_{2k} zeta(2k, L+1)` from the `1/l`
/// expansion of `sin^2(delta_l)`.
pub fn sigma_sum(x: Coupling, params: &PwParams) -> Result<SigmaSum> {
    let xv = x.value();
    if x.is_free() {
        return Ok(SigmaSum {
            value: 0.0,
            err_estimate: 0.0,
            l_max: 0,
        });
    }
    if params.l_max == 0 {
        return Err(Error::Argument("l_max must be at least 1".into()));
    }
    // the 1/l expansion needs l well beyond x
    let l_max = params.l_max.max((4.0 * xv).ceil() as usize);
    let head = sigma_partial_sum(x, l_max);

    let delta = series::phase_shift(xv, SIGMA_SERIES_ORDER + 2);
    let (_, sin2) = series::amplitude_parts(&delta);
    let a = (l_max + 1) as f64;
    let mut tail = 0.0;
    for (p, d) in sin2.iter().enumerate().take(SIGMA_SERIES_ORDER + 1).skip(2) {
        if *d != 0.0 {
            tail += d * hurwitz_zeta(p as f64, a);
        }
    }
    let next =
        sin2[SIGMA_SERIES_ORDER + 2].abs() * hurwitz_zeta((SIGMA_SERIES_ORDER + 2) as f64, a);
    let value = head + 2.0 * tail;
    Ok(SigmaSum {
        value,
        err_estimate: 2.0 * next + 8.0 * f64::EPSILON * value,
        l_max,
    })
}
