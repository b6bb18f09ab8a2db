//! Bessel functions `J0` and `J1` for real `z >= 0`.
//!
//! Three regimes are stitched together:
//!
//! * `z <= SERIES_MAX`: the ascending power series,
//! * `SERIES_MAX < z <= ASYMPTOTIC_MIN`: Miller's backward recurrence
//!   normalised by `J0 + 2 (J2 + J4 + ...) = 1`,
//! * `z > ASYMPTOTIC_MIN`: Hankel's asymptotic expansion, truncated at its
//!   smallest term.
//!
//! The branch points are chosen so neighbouring regimes agree to well below
//! `1e-12` absolute; see the overlap tests.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const SERIES_MAX: f64 = 8.0;
pub const ASYMPTOTIC_MIN: f64 = 25.0;

fn check_arg(z: f64) -> Result<()> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite and nonnegative, got {z}"
        )));
    }
    Ok(())
}

/// `J0(z)` for finite `z >= 0`.
pub fn bessel_j0(z: f64) -> Result<f64> {
    check_arg(z)?;
    Ok(j0(z))
}

/// `J1(z)` for finite `z >= 0`.
pub fn bessel_j1(z: f64) -> Result<f64> {
    check_arg(z)?;
    Ok(j1(z))
}

/// Unchecked `J0`; `z` must be nonnegative.
pub(crate) fn j0(z: f64) -> f64 {
    if z <= SERIES_MAX {
        branches::j0_series(z)
    } else if z <= ASYMPTOTIC_MIN {
        branches::recurrence(z).0
    } else {
        branches::asymptotic(0, z)
    }
}

/// Unchecked `J1`; `z` must be nonnegative.
pub(crate) fn j1(z: f64) -> f64 {
    if z <= SERIES_MAX {
        branches::j1_series(z)
    } else if z <= ASYMPTOTIC_MIN {
        branches::recurrence(z).1
    } else {
        branches::asymptotic(1, z)
    }
}

/// `J1(z) / z`, continuous at the origin where it equals 1/2.
pub(crate) fn j1_over_z(z: f64) -> f64 {
    if z <= SERIES_MAX {
        // sum_k (-1)^k (z/2)^(2k) / (2 k! (k+1)!)
        let q = -0.25 * z * z;
        let mut term = 0.5;
        let mut sum = term;
        for k in 1..64 {
            term *= q / (k as f64 * (k + 1) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        j1(z) / z
    }
}

/// `J2(z) / z^2`, continuous at the origin where it equals 1/8.
pub(crate) fn j2_over_z2(z: f64) -> f64 {
    if z <= 2.0 {
        // sum_k (-1)^k (z/2)^(2k) / (4 k! (k+2)!)
        let q = -0.25 * z * z;
        let mut term = 0.125;
        let mut sum = term;
        for k in 1..64 {
            term *= q / (k as f64 * (k + 2) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        (2.0 * j1(z) / z - j0(z)) / (z * z)
    }
}

/// Individual evaluation regimes, exposed so their overlap can be tested.
pub mod branches {
    use super::*;

    pub fn j0_series(z: f64) -> f64 {
        let q = -0.25 * z * z;
        let mut term = 1.0;
        let mut sum = term;
        for k in 1..200 {
            term *= q / ((k * k) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-17) && term.abs() < 1e-17 {
                break;
            }
        }
        sum
    }

    pub fn j1_series(z: f64) -> f64 {
        let q = -0.25 * z * z;
        let mut term = 0.5 * z;
        let mut sum = term;
        for k in 1..200 {
            term *= q / (k as f64 * (k + 1) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-17) && term.abs() < 1e-17 {
                break;
            }
        }
        sum
    }

    /// `(J0(z), J1(z))` by Miller's backward recurrence. Intended for
    /// moderate `z` (a few to a few dozen); `z` must be positive.
    pub fn recurrence(z: f64) -> (f64, f64) {
        let start = 2 * ((z as usize + 40 + 8 * (z.cbrt() as usize)) / 2);
        let two_over_z = 2.0 / z;
        let mut next = 0.0; // J_{n+1}
        let mut cur = 1e-30; // J_n
        let mut norm = 0.0;
        let mut j0 = 0.0;
        let mut j1 = 0.0;
        for n in (1..=start).rev() {
            let prev = n as f64 * two_over_z * cur - next;
            next = cur;
            cur = prev;
            // `cur` now holds J_{n-1}
            let m = n - 1;
            if m % 2 == 0 && m > 0 {
                norm += 2.0 * cur;
            }
            if m == 1 {
                j1 = cur;
            }
            if m == 0 {
                j0 = cur;
            }
            if cur.abs() > 1e200 {
                cur *= 1e-200;
                next *= 1e-200;
                norm *= 1e-200;
                j1 *= 1e-200;
            }
        }
        norm += j0;
        (j0 / norm, j1 / norm)
    }

    /// Hankel expansion of `J_order(z)` for `order` 0 or 1, summed up to the
    /// smallest term.
    pub fn asymptotic(order: u32, z: f64) -> f64 {
        let mu = 4.0 * (order * order) as f64;
        let chi = z - (0.5 * order as f64 + 0.25) * PI;
        let mut p = 1.0;
        let mut q = 0.0;
        let mut a = 1.0;
        let mut last = f64::INFINITY;
        for k in 1..200 {
            let odd = (2 * k - 1) as f64;
            a *= (mu - odd * odd) / (k as f64 * 8.0 * z);
            if a.abs() >= last || a == 0.0 {
                break;
            }
            last = a.abs();
            // signs: P gets (-1)^(k/2) for even k, Q gets (-1)^((k-1)/2) for odd k
            match k % 4 {
                0 => p += a,
                1 => q += a,
                2 => p -= a,
                _ => q -= a,
            }
            if last < 1e-17 {
                break;
            }
        }
        (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}

/// The `s`-th positive zero of `J1` (`s >= 1`), refined by Newton's method
/// from McMahon's expansion.
pub fn j1_zero(s: usize) -> f64 {
    assert!(s >= 1, "zeros are numbered from 1");
    let beta = (s as f64 + 0.25) * PI;
    let b8 = 8.0 * beta;
    let mut z = beta - 3.0 / b8 + 36.0 / (3.0 * b8 * b8 * b8);
    for _ in 0..50 {
        let f = j1(z);
        let df = j0(z) - f / z;
        let step = f / df;
        z -= step;
        if step.abs() <= 1e-15 * z {
            break;
        }
    }
    z
}

/// The first `n` positive zeros of `J1`, in increasing order.
pub fn j1_positive_zeros(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Argument("number of zeros must be at least 1".into()));
    }
    Ok((1..=n).map(j1_zero).collect())
}

/// Index of the first `J1` zero strictly greater than `z`.
pub(crate) fn first_zero_index_above(z: f64) -> usize {
    // McMahon: j_s ~ (s + 1/4) pi; start slightly below and walk up.
    let mut s = ((z / PI - 0.25).floor() as isize - 1).max(1) as usize;
    while j1_zero(s) <= z {
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reference_values() {
        assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(bessel_j1(1.0).unwrap(), 0.4400505857449335, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_j0(1.0).unwrap(), 0.7651976865579666, epsilon = 1e-15);
        assert!(bessel_j1(3.831_705_970_207_512).unwrap().abs() < 1e-12);
        assert!(bessel_j0(2.404825557695773).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(bessel_j1(-1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j0(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_j1(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn branch_overlap() {
        for i in 0..=200 {
            let z = 7.0 + 2.0 * i as f64 / 200.0;
            let (r0, r1) = branches::recurrence(z);
            assert_abs_diff_eq!(branches::j1_series(z), r1, epsilon = 1e-11);
            assert_abs_diff_eq!(branches::j0_series(z), r0, epsilon = 1e-11);
            let z = 24.0 + 2.0 * i as f64 / 200.0;
            let (r0, r1) = branches::recurrence(z);
            assert_abs_diff_eq!(branches::asymptotic(1, z), r1, epsilon = 1e-11);
            assert_abs_diff_eq!(branches::asymptotic(0, z), r0, epsilon = 1e-11);
        }
    }

    #[test]
    fn envelope_bound() {
        for i in 0..20_000 {
            let z = 2.0 + i as f64 * 0.05;
            assert!(j1(z).abs() <= std::f64::consts::FRAC_1_SQRT_2);
        }
    }

    #[test]
    fn small_ratio_helpers() {
        assert_eq!(j1_over_z(0.0), 0.5);
        assert_eq!(j2_over_z2(0.0), 0.125);
        for z in [0.5, 1.9, 2.1, 5.0, 12.0, 40.0] {
            assert_abs_diff_eq!(j1_over_z(z), j1(z) / z, epsilon = 1e-15);
            let j2 = 2.0 * j1(z) / z - j0(z);
            assert_abs_diff_eq!(j2_over_z2(z) * z * z, j2, epsilon = 1e-13);
        }
    }

    #[test]
    fn zeros() {
        let zs = j1_positive_zeros(50).unwrap();
        assert_abs_diff_eq!(zs[0], 3.831_705_970_207_512, epsilon = 1e-12);
        assert_abs_diff_eq!(zs[1], 7.015_586_669_815_619, epsilon = 1e-12);
        for w in zs.windows(2) {
            assert!(w[1] > w[0]);
        }
        for z in &zs {
            assert!(j1(*z).abs() < 1e-11);
        }
        assert!((zs[49] - zs[48] - PI).abs() < 1e-3);
        assert!(matches!(j1_positive_zeros(0), Err(Error::Argument(_))));
    }

    #[test]
    fn first_zero_above() {
        assert_eq!(first_zero_index_above(0.0), 1);
        assert_eq!(first_zero_index_above(3.9), 2);
        let s = first_zero_index_above(PI * 7.3);
        assert!(j1_zero(s) > PI * 7.3 && j1_zero(s - 1) <= PI * 7.3);
    }
}
