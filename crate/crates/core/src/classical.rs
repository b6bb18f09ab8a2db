//! The `hbar -> 0` (equivalently `x -> infinity`) limit and the forward
//! behaviour of the cross-section.
//!
//! Replacing `J1` by its leading large-argument form in the closed-form
//! imaginary part gives
//!
//! ```text
//! F_asym(theta) = sqrt(2 pi x) [sin w + i cos w] / (|theta| (2 pi - |theta|))^(3/4),
//! w = x sqrt(|theta| (2 pi - |theta|)) - 3 pi / 4,
//! ```
//!
//! whose modulus reproduces the classical cross-section
//! `sqrt(kappa/E) pi^2 / (|theta| (2 pi - |theta|))^(3/2)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AmplitudeResult, Angle, Coupling, Method, ReducedAmplitude};
use crate::partial_waves::{self, PwParams};

fn reject_forward(theta: Angle) -> Result<f64> {
    let t = theta.abs();
    if t == 0.0 {
        return Err(Error::ForwardDivergence { theta: 0.0 });
    }
    Ok(t)
}

/// Leading-order large-`x` amplitude. The error estimate is the size of the
/// first neglected order, `|F_asym| / u` with `u = x sqrt(|theta|(2 pi - |theta|))`.
pub fn asymptotic_reduced_amplitude(x: Coupling, theta: Angle) -> Result<AmplitudeResult> {
    let xv = x.require_interacting()?;
    reject_forward(theta)?;
    let s = theta.arc_measure();
    let u = xv * s;
    let w = u - 0.75 * PI;
    let scale = (2.0 * PI * xv).sqrt() / s.powf(1.5);
    let (sin_w, cos_w) = w.sin_cos();
    Ok(AmplitudeResult {
        theta,
        value: ReducedAmplitude(Complex64::new(scale * sin_w, scale * cos_w)),
        method: Method::Asymptotic,
        err_estimate: scale / u,
        terms_or_panels: 0,
    })
}

/// Classical `dsigma/dtheta = sqrt(kappa/E) pi^2 / (|theta|(2 pi - |theta|))^(3/2)`.
pub fn classical_dcs(kappa_over_e: f64, theta: Angle) -> Result<f64> {
    if !(kappa_over_e.is_finite() && kappa_over_e > 0.0) {
        return Err(Error::Argument(format!(
            "kappa/E must be positive, got {kappa_over_e}"
        )));
    }
    reject_forward(theta)?;
    let s2 = theta.arc_measure().powi(2);
    Ok(kappa_over_e.sqrt() * PI * PI / s2.powf(1.5))
}

/// `||F_pw|^2 - |F_asym|^2| / |F_asym|^2`, the distance from the classical limit.
pub fn classical_relative_error(x: Coupling, theta: Angle) -> Result<f64> {
    let exact = partial_waves::reduced_amplitude(x, theta, &PwParams::for_coupling(x))?;
    let asym = asymptotic_reduced_amplitude(x, theta)?;
    let a2 = asym.value.norm_sqr();
    Ok((exact.value.norm_sqr() - a2).abs() / a2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardModel {
    /// `(a ln theta + b)^2 + c`
    LogSquared,
    /// `p theta^(-3/2) + q`
    PowerLaw,
}

/// Outcome of fitting both forward models to `|F|^2` samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForwardFitReport {
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    /// Coefficient of `ln theta` in the log-squared model.
    pub log_coefficient: f64,
    /// Relative RMS residual of the log-squared model.
    pub log_squared_residual: f64,
    /// Relative RMS residual of the power-law model.
    pub power_law_residual: f64,
    /// Model whose residual is at least ten times smaller, if any.
    pub preferred: Option<ForwardModel>,
    /// Data carries no forward growth (constant or non-convex in `ln theta`).
    pub degenerate: bool,
}

/// Residual ratio required before one model is declared preferred.
pub const PREFERENCE_RATIO: f64 = 10.0;

fn least_squares(design: DMatrix<f64>, y: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let svd = design.clone().svd(true, true);
    let coef = svd
        .solve(y, 1e-14)
        .map_err(|e| Error::Argument(format!("least-squares solve failed: {e}")))?;
    let resid = (design * &coef - y).norm() / y.norm().max(f64::MIN_POSITIVE);
    Ok((coef, resid))
}

/// Fit `values` against `(a ln theta + b)^2 + c` and `p theta^(-3/2) + q`.
///
/// The log-squared model is linear in `(a^2, 2ab, b^2 + c)`, so both fits
/// are ordinary least squares.
pub fn fit_forward_models(thetas: &[f64], values: &[f64]) -> Result<ForwardFitReport> {
    if thetas.len() != values.len() {
        return Err(Error::Argument("thetas and values differ in length".into()));
    }
    if thetas.len() < 4 {
        return Err(Error::Argument(format!(
            "need at least 4 samples, got {}",
            thetas.len()
        )));
    }
    if thetas.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(Error::Argument("sample angles must be positive".into()));
    }
    let n = thetas.len();
    let y = DVector::from_column_slice(values);
    let logs: Vec<f64> = thetas.iter().map(|t| t.ln()).collect();
    let log_design = DMatrix::from_fn(n, 3, |i, j| logs[i].powi(2 - j as i32));
    let (log_coef, log_res) = least_squares(log_design, &y)?;
    let power_design =
        DMatrix::from_fn(n, 2, |i, j| if j == 0 { thetas[i].powf(-1.5) } else { 1.0 });
    let (_, power_res) = least_squares(power_design, &y)?;

    let mean = values.iter().sum::<f64>() / n as f64;
    let spread = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    let quad = log_coef[0];
    let degenerate = spread <= 1e-12 * mean.abs().max(f64::MIN_POSITIVE) || quad <= 0.0;

    let preferred = if degenerate {
        None
    } else if power_res >= PREFERENCE_RATIO * log_res {
        Some(ForwardModel::LogSquared)
    } else if log_res >= PREFERENCE_RATIO * power_res {
        Some(ForwardModel::PowerLaw)
    } else {
        None
    };

    Ok(ForwardFitReport {
        thetas: thetas.to_vec(),
        values: values.to_vec(),
        log_coefficient: if quad > 0.0 { quad.sqrt() } else { 0.0 },
        log_squared_residual: log_res,
        power_law_residual: power_res,
        preferred,
        degenerate,
    })
}

/// Samples `|F_pw|^2` at small angles and compares the two forward models.
///
/// Samples must be strictly decreasing, lie in `(0, 0.1]`, and number at
/// least four.
pub fn forward_divergence_probe(x: Coupling, theta_samples: &[f64]) -> Result<ForwardFitReport> {
    if theta_samples.len() < 4 {
        return Err(Error::Argument(format!(
            "need at least 4 samples, got {}",
            theta_samples.len()
        )));
    }
    if theta_samples.iter().any(|t| !(*t > 0.0 && *t <= 0.1)) {
        return Err(Error::Argument(
            "forward samples must lie in (0, 0.1]".into(),
        ));
    }
    if theta_samples.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Argument(
            "forward samples must be strictly decreasing".into(),
        ));
    }
    let params = PwParams::for_coupling(x);
    let values = theta_samples
        .iter()
        .map(|t| {
            partial_waves::reduced_amplitude(x, Angle::new(*t)?, &params)
                .map(|r| r.value.norm_sqr())
        })
        .collect::<Result<Vec<_>>>()?;
    fit_forward_models(theta_samples, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::im_reduced_amplitude;
    use crate::model::dcs_from_reduced;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn cpl(x: f64) -> Coupling {
        Coupling::new(x).unwrap()
    }

    fn ang(t: f64) -> Angle {
        Angle::new(t).unwrap()
    }

    #[test]
    fn modulus_and_phase() {
        let x = 3.7;
        for t in [0.2, 1.0, PI / 2.0, 3.0, PI] {
            let f = asymptotic_reduced_amplitude(cpl(x), ang(t)).unwrap().value;
            let s2 = t * (2.0 * PI - t);
            assert_relative_eq!(
                f.norm_sqr(),
                2.0 * PI * x / s2.powf(1.5),
                max_relative = 1e-14
            );
            let w = x * s2.sqrt() - 0.75 * PI;
            assert_relative_eq!(f.im() / f.re(), 1.0 / w.tan(), max_relative = 1e-10);
        }
    }

    #[test]
    fn rejects_forward() {
        assert!(asymptotic_reduced_amplitude(cpl(1.0), ang(0.0)).is_err());
        assert!(classical_dcs(1.0, ang(0.0)).is_err());
        assert!(classical_dcs(-1.0, ang(1.0)).is_err());
    }

    #[test]
    fn classical_values() {
        assert_relative_eq!(
            classical_dcs(1.0, ang(PI)).unwrap(),
            1.0 / PI,
            max_relative = 1e-15
        );
        let a = classical_dcs(0.7, ang(1.1)).unwrap();
        let b = classical_dcs(1.4, ang(1.1)).unwrap();
        assert_relative_eq!(b / a, 2f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn asymptotic_modulus_is_classical() {
        // sqrt(kappa/E) = x/k
        for (x, k) in [(50.0, 1.0), (3.0, 0.4), (120.0, 7.0)] {
            for t in [0.01, 0.9, PI / 2.0, 2.5, -1.2] {
                let f = asymptotic_reduced_amplitude(cpl(x), ang(t)).unwrap().value;
                let kappa_over_e = (x / k) * (x / k);
                assert_relative_eq!(
                    dcs_from_reduced(f, k),
                    classical_dcs(kappa_over_e, ang(t)).unwrap(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn imaginary_part_tracks_exact_for_large_argument() {
        for x in [12.0, 30.0, 80.0] {
            for t in [1.0, PI / 2.0, 2.5] {
                let u = x * ang(t).arc_measure();
                if u <= 30.0 {
                    continue;
                }
                let exact = im_reduced_amplitude(cpl(x), ang(t));
                let asym = asymptotic_reduced_amplitude(cpl(x), ang(t))
                    .unwrap()
                    .value
                    .im();
                // compare on the scale of the envelope: Im itself may cross zero
                let envelope = (2.0 * PI * x).sqrt() / ang(t).arc_measure().powf(1.5);
                assert!((exact - asym).abs() < 0.02 * envelope, "x={x} t={t}");
            }
        }
    }

    #[test]
    fn forward_fit_models() {
        let thetas = [1e-2, 3e-3, 1e-3, 3e-4];
        let classical: Vec<f64> = thetas
            .iter()
            .map(|t| classical_dcs(1.0, ang(*t)).unwrap())
            .collect();
        let r = fit_forward_models(&thetas, &classical).unwrap();
        assert_eq!(r.preferred, Some(ForwardModel::PowerLaw));

        let log2: Vec<f64> = thetas
            .iter()
            .map(|t: &f64| (2.0 * t.ln() + 1.0).powi(2) + 3.0)
            .collect();
        let r = fit_forward_models(&thetas, &log2).unwrap();
        assert_eq!(r.preferred, Some(ForwardModel::LogSquared));
        assert_abs_diff_eq!(r.log_coefficient, 2.0, epsilon = 1e-8);

        let flat = [2.5; 4];
        let r = fit_forward_models(&thetas, &flat).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.preferred, None);

        assert!(fit_forward_models(&thetas[..3], &classical[..3]).is_err());
    }

    #[test]
    fn probe_validates_samples() {
        let x = cpl(1.0);
        assert!(forward_divergence_probe(x, &[1e-2, 3e-3, 1e-3]).is_err());
        assert!(forward_divergence_probe(x, &[1e-3, 3e-3, 1e-2, 3e-2]).is_err());
        assert!(forward_divergence_probe(x, &[0.5, 3e-3, 1e-3, 3e-4]).is_err());
    }

    #[test]
    fn quantum_forward_growth_is_log_squared() {
        let r = forward_divergence_probe(cpl(1.0), &[1e-2, 3e-3, 1e-3, 3e-4]).unwrap();
        assert_eq!(r.preferred, Some(ForwardModel::LogSquared));
        // Re F ~ x^2 ln theta for small theta
        assert!(
            (r.log_coefficient - 1.0).abs() < 0.05,
            "{}",
            r.log_coefficient
        );
    }
}
