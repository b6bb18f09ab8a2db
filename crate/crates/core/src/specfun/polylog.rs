//! `Li_s(e^{i theta})` for `s = 1, 2, 3`.
//!
//! Uses the expansion of `Li_n(e^mu)` about `mu = 0`,
//!
//! ```text
//! Li_n(e^mu) = mu^(n-1)/(n-1)! [H_(n-1) - ln(-mu)] + sum_{k != n-1} zeta(n-k) mu^k / k!
//! ```
//!
//! with `mu = i theta` reduced to `[-pi, pi]`, where it converges like
//! `(theta / 2 pi)^2` per term.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use super::zeta::zeta;
use crate::error::{Error, Result};

const ZETA3: f64 = 1.2020569031595942;

fn zeta_int(n: u32) -> f64 {
    match n {
        2 => PI * PI / 6.0,
        3 => ZETA3,
        _ => zeta(n as f64),
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Reduce an angle to `[-pi, pi]`.
pub(crate) fn reduce_angle(theta: f64) -> f64 {
    theta - TAU * (theta / TAU).round()
}

/// `sum_{l >= 1} e^{i l theta} / l^s` for `s` in `{1, 2, 3}`.
///
/// For `s = 1` this is `-ln(1 - e^{i theta})` on the principal branch and is
/// singular at `theta = 0 (mod 2 pi)`.
pub fn polylog_unit_circle(s: u32, theta: f64) -> Result<Complex64> {
    if !(1..=3).contains(&s) {
        return Err(Error::Argument(format!(
            "polylogarithm order must be 1, 2 or 3, got {s}"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got {theta}")));
    }
    let t = reduce_angle(theta);
    if t == 0.0 {
        if s == 1 {
            return Err(Error::Singularity(
                "Li_1(e^{i theta}) diverges at theta = 0 mod 2 pi".into(),
            ));
        }
        return Ok(Complex64::new(zeta_int(s), 0.0));
    }
    Ok(li_reduced(s, t))
}

/// Series evaluation for `t` in `[-pi, pi] \ {0}`.
fn li_reduced(n: u32, t: f64) -> Complex64 {
    let mu = Complex64::new(0.0, t);

    // logarithmic term, k = n - 1
    let harmonic: f64 = (1..n).map(|j| 1.0 / j as f64).sum();
    let ln_neg_mu = Complex64::new(t.abs().ln(), -FRAC_PI_2 * t.signum());
    let mut fact = 1.0;
    for j in 1..n {
        fact *= j as f64;
    }
    let mut sum = mu.powu(n - 1) / fact * (harmonic - ln_neg_mu);

    // k = 0 ..= n-2: positive zeta arguments
    let mut kfact = 1.0;
    for k in 0..n.saturating_sub(1) {
        if k > 0 {
            kfact *= k as f64;
        }
        sum += zeta_int(n - k) * mu.powu(k) / kfact;
    }

    // k = n: zeta(0) = -1/2
    let nfact = fact * n as f64;
    sum += -0.5 * mu.powu(n) / nfact;

    // k = 2j - 1 + n: zeta(1 - 2j) = (-1)^j 2 (2j-1)! zeta(2j) / (2 pi)^(2j)
    let t_pow = t.powi(n as i32 - 1);
    let ratio = (t / TAU) * (t / TAU);
    let mut geom = 1.0;
    for j in 1..200u32 {
        geom *= ratio;
        let m = 2 * j - 1;
        let falling: f64 = (1..=n).map(|i| (m + i) as f64).product();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let mag = 2.0 * zeta(2.0 * j as f64) * geom / falling * t_pow;
        sum += i_pow(m + n) * (sign * mag);
        if mag.abs() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// `sum_{l > L} e^{i l theta} / l^s` evaluated directly, without forming
/// the difference of the full sum and a partial sum.
///
/// Uses the asymptotic (Euler transform) expansion
/// `sum_{n>=0} z^n f(n) = (1/(1-z)) sum_k (z/(1-z))^k Delta^k f(0)` with
/// `f(n) = (L + 1 + n)^(-s)`, which converges fast once
/// `2 (L+1) |sin(theta/2)|` is large. Returns `None` when that quantity is
/// below 30.
pub fn polylog_tail(s: u32, theta: f64, l_max: usize) -> Option<Complex64> {
    const TERMS: usize = 24;
    const TAYLOR: usize = TERMS + 10;
    let a = (l_max + 1) as f64;
    let half_sin = (0.5 * theta).sin();
    if !(s >= 1 && a * 2.0 * half_sin.abs() >= 30.0) {
        return None;
    }
    let z = Complex64::from_polar(1.0, theta);
    // 1 - e^{it} = -2i sin(t/2) e^{it/2}
    let one_minus_z =
        Complex64::new(0.0, -2.0 * half_sin) * Complex64::from_polar(1.0, 0.5 * theta);
    let w = z / one_minus_z;

    // Taylor coefficients of (a + n)^(-s) in n: (-1)^m (s)_m / m! a^(-s-m)
    let mut taylor = [0.0; TAYLOR + 1];
    taylor[0] = a.powi(-(s as i32));
    for m in 1..=TAYLOR {
        let prev = taylor[m - 1];
        taylor[m] = -prev * (s as f64 + m as f64 - 1.0) / (m as f64 * a);
    }
    // k! S(m, k), built row by row: T(m, k) = k (T(m-1, k) + T(m-1, k-1))
    let mut row = [0.0; TAYLOR + 1];
    row[0] = 1.0;
    let mut diffs = [0.0; TAYLOR + 1];
    diffs[0] = taylor[0];
    for (m, t) in taylor.iter().enumerate().skip(1) {
        for k in (1..=m).rev() {
            row[k] = k as f64 * (row[k] + row[k - 1]);
        }
        row[0] = 0.0;
        for k in 1..=m {
            diffs[k] += row[k] * t;
        }
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut wk = Complex64::new(1.0, 0.0);
    for d in diffs.iter().take(TERMS) {
        let term = wk * *d;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        wk *= w;
    }
    Some(Complex64::from_polar(1.0, a * theta) * sum / one_minus_z)
}
