//! Reference implementations shared by the integration tests. They use no
//! code from the library.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

const FRACTION_BITS: u64 = 400;

/// `J_n(z)` from its power series in 400-bit fixed point. `z` is taken as
/// the exact dyadic rational it represents.
pub fn bessel_series(n: u32, z: f64) -> f64 {
    assert!(z >= 0.0 && z.is_finite());
    let half = z / 2.0;
    let (mantissa, exponent) = decompose(half);
    // h = mantissa * 2^exponent, exactly, with exponent >= -FRACTION_BITS / 4.
    let h = BigInt::from(mantissa) << (FRACTION_BITS as i64 + exponent) as usize;
    let one = BigInt::from(1) << FRACTION_BITS as usize;
    let q = (&h * &h) >> FRACTION_BITS as usize;
    let mut term = one.clone();
    for k in 1..=n {
        term = ((term * &h) >> FRACTION_BITS as usize) / k;
    }
    let mut sum = BigInt::zero();
    let mut m: u64 = 0;
    loop {
        if m.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        m += 1;
        term = ((term * &q) >> FRACTION_BITS as usize) / (m * (m + n as u64));
        if term.is_zero() {
            break;
        }
    }
    sum.to_f64().unwrap() / 2f64.powi(FRACTION_BITS as i32)
}

fn decompose(v: f64) -> (u64, i64) {
    if v == 0.0 {
        return (0, 0);
    }
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    assert!(
        e > -(FRACTION_BITS as i64) / 4,
        "argument too small for the fixed-point oracle"
    );
    (m, e)
}

/// `delta_l = (pi/2)(|l| - sqrt(l^2 + x^2))` in the cancellation-free form.
pub fn phase(x: f64, l: u64) -> f64 {
    let l = l as f64;
    -(PI / 2.0) * x * x / (l + (l * l + x * x).sqrt())
}

/// Abel-damped brute-force partial-wave sum:
/// `(2/pi)[a_0 + 2 sum_{l=1}^{n} r^l cos(l theta) a_l]`, `a_l = e^{i delta} sin delta`.
pub fn abel_amplitude(x: f64, theta: f64, n: u64, r: f64) -> Complex64 {
    let a = |l: u64| {
        let d = phase(x, l);
        Complex64::from_polar(d.sin(), d)
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut w = 1.0;
    for l in 1..=n {
        w *= r;
        let term = a(l) * (w * (l as f64 * theta).cos());
        // Kahan summation per component.
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    (a(0) + 2.0 * sum) * (2.0 / PI)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut t = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            loop {
                let (p, dp) = legendre(n, t);
                let dt = p / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    let (_, dp) = legendre(n, t);
                    return (t, 2.0 / ((1.0 - t * t) * dp * dp));
                }
            }
        })
        .collect()
}

fn legendre(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (t * p1 - p0) / (t * t - 1.0))
}

/// `int_a^b f` by composite Gauss-Legendre over the given panel edges.
pub fn composite_gauss(f: impl Fn(f64) -> f64, edges: &[f64], rule: &[(f64, f64)]) -> f64 {
    edges
        .windows(2)
        .map(|w| {
            let (c, h) = ((w[0] + w[1]) / 2.0, (w[1] - w[0]) / 2.0);
            h * rule.iter().map(|(t, wt)| wt * f(c + h * t)).sum::<f64>()
        })
        .sum()
}
