//! Cross-method and identity checks, packaged as a deterministic report.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{self, ForwardModel, PREFERENCE_RATIO};
use crate::dispersion::{self, DispParams};
use crate::error::{Error, Result};
use crate::model::{Angle, Coupling};
use crate::numerics::integrate_with_breakpoints;
use crate::partial_waves::{self, PwParams};
use crate::specfun::bessel::j1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `f64::INFINITY` (serialised as `null`) when the check could not be computed.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        residual: f64,
        tolerance: f64,
        details: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: residual.abs() <= tolerance,
            details: details.into(),
        }
    }

    fn failed(name: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        Self::new(name, f64::INFINITY, tolerance, format!("error: {err}"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub amplitude_tol: f64,
    pub sum_tol: f64,
    pub integral_tol: f64,
    pub backscatter_tol: f64,
    pub grid_points: usize,
    pub forward_samples: Vec<f64>,
    /// Include the classical-limit group.
    pub classical: bool,
    pub disp: DispParams,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            amplitude_tol: 1e-6,
            sum_tol: 1e-8,
            integral_tol: 1e-3,
            backscatter_tol: 1e-8,
            grid_points: 25,
            forward_samples: vec![1e-2, 3e-3, 1e-3, 3e-4],
            classical: true,
            disp: DispParams::default(),
        }
    }
}

impl SuiteConfig {
    /// Replace every numeric tolerance by `tol`.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.amplitude_tol = tol;
        self.sum_tol = tol;
        self.integral_tol = tol;
        self.backscatter_tol = tol;
        self
    }
}

/// `n` equally spaced angles on `[0.05, pi - 0.01]`, inside both methods' domains.
pub fn default_grid(n: usize) -> Vec<Angle> {
    let (lo, hi) = (0.05, PI - 0.01);
    (0..n)
        .map(|i| {
            let t = if n == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            Angle::new(t).expect("grid inside [-pi, pi]")
        })
        .collect()
}

fn tag(name: &str, x: Coupling) -> String {
    format!("{name}[x={}]", x.value())
}

/// `max |F_pw - F_disp|` over `grid`.
pub fn check_method_agreement(
    x: Coupling,
    grid: &[Angle],
    tol: f64,
    disp: &DispParams,
) -> Result<Check> {
    if grid.is_empty() {
        return Err(Error::Argument(
            "method agreement needs a nonempty grid".into(),
        ));
    }
    let name = tag("method_agreement", x);
    let pw = PwParams::for_coupling(x);
    let diffs: Result<Vec<(f64, f64)>> = grid
        .par_iter()
        .map(|&t| {
            let a = partial_waves::reduced_amplitude(x, t, &pw)?;
            let b = dispersion::reduced_amplitude(x, t, disp)?;
            Ok(((a.value.0 - b.value.0).norm(), t.radians()))
        })
        .collect();
    Ok(match diffs {
        Ok(d) => {
            let (worst, at) =
                d.into_iter()
                    .fold((0.0, f64::NAN), |acc, v| if v.0 > acc.0 { v } else { acc });
            Check::new(
                name,
                worst,
                tol,
                format!("{} angles, worst at theta = {at}", grid.len()),
            )
        }
        Err(e) => Check::failed(name, tol, &e),
    })
}

/// `max |Im F_pw - pi x^2 J1(u)/u|` over `grid`.
pub fn check_imaginary_closed_form(x: Coupling, grid: &[Angle], tol: f64) -> Result<Check> {
    if grid.is_empty() {
        return Err(Error::Argument(
            "imaginary-part check needs a nonempty grid".into(),
        ));
    }
    let name = tag("imaginary_closed_form", x);
    let pw = PwParams::for_coupling(x);
    let diffs: Result<Vec<f64>> = grid
        .par_iter()
        .map(|&t| {
            let a = partial_waves::reduced_amplitude(x, t, &pw)?;
            Ok((a.value.im() - dispersion::im_reduced_amplitude(x, t)).abs())
        })
        .collect();
    Ok(match diffs {
        Ok(d) => Check::new(
            name,
            d.into_iter().fold(0.0, f64::max),
            tol,
            format!("{} angles", grid.len()),
        ),
        Err(e) => Check::failed(name, tol, &e),
    })
}

/// `|Im F_pw(pi) - x J1(pi x)|`.
pub fn check_backscatter_imaginary(x: Coupling, tol: f64) -> Check {
    let name = tag("backscatter_imaginary", x);
    let theta = Angle::new(PI).expect("pi is admissible");
    match partial_waves::reduced_amplitude(x, theta, &PwParams::for_coupling(x)) {
        Ok(a) => {
            let expect = x.value() * j1(PI * x.value());
            Check::new(
                name,
                (a.value.im() - expect).abs(),
                tol,
                format!("x J1(pi x) = {expect}"),
            )
        }
        Err(e) => Check::failed(name, tol, &e),
    }
}

/// `int_{-pi}^{pi} |F|^2 dtheta` from the partial-wave amplitude.
///
/// The integrable `ln^2 theta` peak is resolved with breakpoints
/// `theta_j = e^{-j}`, `j = 0..=30`.
pub fn integrated_intensity(x: Coupling) -> Result<(f64, f64)> {
    if x.is_free() {
        return Ok((0.0, 0.0));
    }
    let pw = PwParams::for_coupling(x);
    let mut points: Vec<f64> = (0..=30).rev().map(|j| (-(j as f64)).exp()).collect();
    points.insert(0, 0.0);
    points.push(PI);
    let failure = std::sync::Mutex::new(None);
    let f = |t: f64| match Angle::new(t).and_then(|a| partial_waves::reduced_amplitude(x, a, &pw)) {
        Ok(a) => a.value.norm_sqr(),
        Err(e) => {
            failure.lock().unwrap().get_or_insert(e);
            0.0
        }
    };
    let target = 2.0 * PI * x.value() * x.value();
    let r = integrate_with_breakpoints(f, &points, 1e-10 * target, 2000);
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok((2.0 * r.value, 2.0 * r.error))
}

/// `|int |F|^2 - 4 Im F(0)| / (4 Im F(0))`; both sides equal `2 pi x^2`.
pub fn check_optical_theorem(x: Coupling, tol: f64) -> Check {
    let name = tag("optical_theorem", x);
    let forward = 4.0 * dispersion::im_reduced_amplitude(x, Angle::new(0.0).expect("zero angle"));
    match integrated_intensity(x) {
        Ok((integral, err)) => {
            let residual = if forward == 0.0 {
                integral.abs()
            } else {
                (integral - forward).abs() / forward
            };
            Check::new(
                name,
                residual,
                tol,
                format!("integral = {integral} (+/- {err:e}), 4 Im F(0) = {forward}"),
            )
        }
        Err(e) => Check::failed(name, tol, &e),
    }
}

/// `|4 S - pi^2 x^2| / max(pi^2 x^2, tiny)` with `S` the partial-wave sum.
pub fn check_sigma_consistency(x: Coupling, tol: f64) -> Check {
    let name = tag("sigma_consistency", x);
    match partial_waves::sigma_sum(x, &PwParams::for_coupling(x)) {
        Ok(s) => {
            let exact = PI * PI * x.value() * x.value();
            let residual = (4.0 * s.value - exact).abs() / exact.max(f64::MIN_POSITIVE);
            Check::new(
                name,
                residual,
                tol,
                format!(
                    "4 S = {} (l_max {}), pi^2 x^2 = {exact}",
                    4.0 * s.value,
                    s.l_max
                ),
            )
        }
        Err(e) => Check::failed(name, tol, &e),
    }
}

/// Passes when the `ln^2` model fits `|F_pw|^2` at least ten times better
/// than the `theta^(-3/2)` power law. Residual is the ratio of the two fit
/// residuals.
pub fn check_forward_divergence(x: Coupling, samples: &[f64]) -> Check {
    let name = tag("forward_log_squared", x);
    let tol = 1.0 / PREFERENCE_RATIO;
    match classical::forward_divergence_probe(x, samples) {
        Ok(r) if r.preferred == Some(ForwardModel::LogSquared) => Check::new(
            name,
            r.log_squared_residual / r.power_law_residual,
            tol,
            format!(
                "ln theta coefficient {:.6}, residuals ln^2 {:e} vs power {:e}",
                r.log_coefficient, r.log_squared_residual, r.power_law_residual
            ),
        ),
        Ok(r) => Check::new(
            name,
            if r.degenerate {
                f64::INFINITY
            } else {
                r.log_squared_residual / r.power_law_residual
            },
            tol,
            format!(
                "log-squared model not preferred: {:?}, degenerate = {}",
                r.preferred, r.degenerate
            ),
        ),
        Err(e) => Check::failed(name, tol, &e),
    }
}

/// Relative distance between `|F_pw|^2` and the classical `|F_asym|^2` at
/// `theta = pi/2`.
fn classical_errors(xs: &[f64]) -> Result<Vec<f64>> {
    let theta = Angle::new(PI / 2.0)?;
    xs.par_iter()
        .map(|&x| classical::classical_relative_error(Coupling::new(x)?, theta))
        .collect()
}

pub fn check_classical_limit(tol: f64) -> Check {
    let name = "classical_limit[x=50,theta=pi/2]";
    match classical_errors(&[50.0]) {
        Ok(e) => Check::new(
            name,
            e[0],
            tol,
            "relative deviation of |F|^2 from the classical limit",
        ),
        Err(e) => Check::failed(name, tol, &e),
    }
}

/// Residual is the largest increase of the classical deviation along
/// `x = 5, 20, 80`; zero when the approach is monotone.
pub fn check_classical_monotone() -> Check {
    let name = "classical_convergence[x=5,20,80]";
    match classical_errors(&[5.0, 20.0, 80.0]) {
        Ok(e) => {
            let worst = e
                .windows(2)
                .map(|w| (w[1] - w[0]).max(0.0))
                .fold(0.0, f64::max);
            Check::new(name, worst, 0.0, format!("relative deviations {e:?}"))
        }
        Err(e) => Check::failed(name, 0.0, &e),
    }
}

/// The classical cross-section must prefer the power law on the same samples.
pub fn check_classical_forward(samples: &[f64]) -> Check {
    let name = "classical_forward_power_law";
    let tol = 1.0 / PREFERENCE_RATIO;
    let values: Result<Vec<f64>> = samples
        .iter()
        .map(|t| classical::classical_dcs(1.0, Angle::new(*t)?))
        .collect();
    match values.and_then(|v| classical::fit_forward_models(samples, &v)) {
        Ok(r) => Check::new(
            name,
            if r.degenerate {
                f64::INFINITY
            } else {
                r.power_law_residual / r.log_squared_residual
            },
            tol,
            format!(
                "residuals power {:e} vs ln^2 {:e}, preferred {:?}",
                r.power_law_residual, r.log_squared_residual, r.preferred
            ),
        ),
        Err(e) => Check::failed(name, tol, &e),
    }
}

fn coupling_group(x: f64, config: &SuiteConfig) -> Vec<Check> {
    let name = format!("coupling[x={x}]");
    let x = match Coupling::new(x) {
        Ok(x) => x,
        Err(e) => return vec![Check::failed(name, 0.0, &e)],
    };
    let mut checks = Vec::new();
    if !x.is_free() {
        let grid = default_grid(config.grid_points);
        let push = |checks: &mut Vec<Check>, r: Result<Check>, n: &str, tol: f64| match r {
            Ok(c) => checks.push(c),
            Err(e) => checks.push(Check::failed(tag(n, x), tol, &e)),
        };
        push(
            &mut checks,
            check_method_agreement(x, &grid, config.amplitude_tol, &config.disp),
            "method_agreement",
            config.amplitude_tol,
        );
        push(
            &mut checks,
            check_imaginary_closed_form(x, &grid, config.amplitude_tol),
            "imaginary_closed_form",
            config.amplitude_tol,
        );
        checks.push(check_backscatter_imaginary(x, config.backscatter_tol));
    }
    checks.push(check_optical_theorem(x, config.integral_tol));
    checks.push(check_sigma_consistency(x, config.sum_tol));
    if !x.is_free() {
        checks.push(check_forward_divergence(x, &config.forward_samples));
    }
    checks
}

/// Runs every check for each coupling in `xs` (in the given order), then the
/// classical-limit group. An empty `xs` yields an empty report.
pub fn run_full_suite(xs: &[f64], config: &SuiteConfig) -> ValidationReport {
    if xs.is_empty() {
        return ValidationReport::default();
    }
    let groups: Vec<Vec<Check>> = xs.par_iter().map(|&x| coupling_group(x, config)).collect();
    let mut checks: Vec<Check> = groups.into_iter().flatten().collect();
    if config.classical {
        checks.push(check_classical_limit(0.05));
        checks.push(check_classical_monotone());
        checks.push(check_classical_forward(&config.forward_samples));
    }
    ValidationReport { checks }
}
