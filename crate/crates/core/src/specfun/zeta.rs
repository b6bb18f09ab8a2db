//! Riemann and Hurwitz zeta for real `s > 1`, via Euler-Maclaurin.

/// `B_{2k} / (2k)!` for `k = 1..=7`.
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
];

/// Hurwitz zeta `sum_{n>=0} (n + a)^(-s)` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    let mut head = 0.0;
    let mut b = a;
    // shift until the Euler-Maclaurin remainder is negligible
    let min_b = 10.0_f64.max(s);
    while b < min_b {
        head += b.powf(-s);
        b += 1.0;
    }
    let mut tail = b.powf(1.0 - s) / (s - 1.0) + 0.5 * b.powf(-s);
    // s (s+1) ... (s+2k-2) b^(-s-2k+1)
    let mut rising = s * b.powf(-s - 1.0);
    for (k, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coef * rising;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let k = k as f64 + 1.0;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k) / (b * b);
    }
    head + tail
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> f64 {
    if s > 40.0 {
        // 1 + 2^-s + 3^-s is exact to double precision here
        return 1.0 + 2f64.powf(-s) + 3f64.powf(-s);
    }
    hurwitz_zeta(s, 1.0)
}
