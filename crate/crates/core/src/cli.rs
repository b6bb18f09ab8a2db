//! Command-line front end. [`run`] does all the work and returns the text
//! and exit code, so the binary is a thin wrapper.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classical;
use crate::dispersion::{self, DispParams};
use crate::error::{Error, Result};
use crate::model::{
    dcs_from_reduced, sigma_closed_form, AmplitudeResult, Angle, Coupling, Kinematics, Method,
};
use crate::partial_waves::{self, PwParams};
use crate::validation::{run_full_suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const CSV_HEADER: &str = "theta,method,re_F,im_F,abs_F2,dsigma_dtheta,err_estimate";

#[derive(Debug, Parser)]
#[command(name = "invsq2d", version, about = "2D scattering off V = kappa/r^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced amplitude at one angle.
    Amplitude {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value = "partial_wave", value_parser = parse_method)]
        method: Method,
        #[command(flatten)]
        numerics: Numerics,
        #[command(flatten)]
        output: Output,
    },
    /// Amplitudes on an equally spaced angle grid.
    Sweep {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, default_value_t = PI, allow_negative_numbers = true)]
        theta_max: f64,
        #[arg(long, default_value_t = 25)]
        n: usize,
        /// Comma-separated list of methods.
        #[arg(long, value_delimiter = ',', default_value = "partial_wave,dispersion", value_parser = parse_method)]
        method: Vec<Method>,
        #[command(flatten)]
        numerics: Numerics,
        #[command(flatten)]
        output: Output,
    },
    /// Total cross-section, closed form against the partial-wave sum.
    Sigma {
        #[command(flatten)]
        physics: Physics,
        #[arg(long)]
        lmax: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact against classical differential cross-section.
    Classical {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = PI / 2.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        lmax: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the validation suite and print a JSON report.
    Validate {
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
        x_list: Vec<f64>,
        /// Override every tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Coupling and wavenumber, either dimensionless or from physical constants.
#[derive(Debug, Clone, Args)]
pub struct Physics {
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long = "E")]
    pub energy: Option<f64>,
}

impl Physics {
    fn coupling(&self) -> Result<Coupling> {
        match (self.x, self.m, self.kappa, self.hbar) {
            (Some(_), _, Some(_), _) => Err(Error::Argument(
                "give either --x or --kappa, not both".into(),
            )),
            (Some(x), _, _, _) => Coupling::new(x),
            (None, Some(m), Some(kappa), Some(hbar)) => Coupling::from_physical(m, kappa, hbar),
            _ => Err(Error::Argument(
                "need --x, or --m, --kappa and --hbar".into(),
            )),
        }
    }

    fn kinematics(&self) -> Result<Kinematics> {
        match (self.k, self.energy) {
            (Some(_), Some(_)) => Err(Error::Argument("give either --k or --E, not both".into())),
            (Some(k), None) => Kinematics::new(k),
            (None, Some(e)) => match (self.m, self.hbar) {
                (Some(m), Some(hbar)) => Kinematics::from_physical(m, hbar, e),
                _ => Err(Error::Argument("--E needs --m and --hbar".into())),
            },
            (None, None) => Kinematics::new(1.0),
        }
    }

    fn spec(&self, x: Coupling, kin: &Kinematics) -> Value {
        let mut v = json!({ "x": x.value(), "k": kin.k() });
        if let Some(p) = kin.physical() {
            v["m"] = json!(p.mass);
            v["hbar"] = json!(p.hbar);
            v["E"] = json!(p.energy);
        }
        if let Some(kappa) = self.kappa {
            v["kappa"] = json!(kappa);
        }
        v
    }
}

#[derive(Debug, Clone, Args)]
pub struct Numerics {
    /// Absolute tolerance of the dispersion integrals.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Explicit partial-wave cutoff.
    #[arg(long)]
    pub lmax: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// One amplitude row: the evaluation angle, method and either the result or
/// an error message.
#[derive(Debug, Clone)]
pub struct Row {
    pub theta: f64,
    pub method: Method,
    pub result: std::result::Result<AmplitudeResult, String>,
    pub k: f64,
}

fn evaluate(
    x: Coupling,
    theta: f64,
    method: Method,
    numerics: &Numerics,
) -> Result<AmplitudeResult> {
    let theta = Angle::new(theta)?;
    match method {
        Method::PartialWave => {
            let mut p = PwParams::for_coupling(x);
            if let Some(l) = numerics.lmax {
                p.l_max = l;
            }
            partial_waves::reduced_amplitude(x, theta, &p)
        }
        Method::Dispersion => {
            let mut p = DispParams::default();
            if let Some(t) = numerics.tol {
                p.tol = t;
            }
            dispersion::reduced_amplitude(x, theta, &p)
        }
        Method::Asymptotic => classical::asymptotic_reduced_amplitude(x, theta),
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// A parsed CSV record; `values` is `None` for a failed row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRecord {
    pub theta: f64,
    pub method: String,
    pub values: Option<[f64; 5]>,
}

impl From<&Row> for CsvRecord {
    fn from(r: &Row) -> Self {
        Self {
            theta: r.theta,
            method: r.method.name().to_string(),
            values: r.result.as_ref().ok().map(|a| {
                [
                    a.value.re(),
                    a.value.im(),
                    a.value.norm_sqr(),
                    dcs_from_reduced(a.value, r.k),
                    a.err_estimate,
                ]
            }),
        }
    }
}

pub fn write_csv(records: &[CsvRecord]) -> String {
    let mut s = String::with_capacity(160 * (records.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = write!(s, "{},{}", fmt_num(r.theta), r.method);
        match &r.values {
            Some(v) => v.iter().for_each(|v| {
                let _ = write!(s, ",{}", fmt_num(*v));
            }),
            None => s.push_str(",,,,,"),
        }
        s.push('\n');
    }
    s
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRecord>> {
    let bad = |line: usize, what: &str| Error::Argument(format!("csv line {line}: {what}"));
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(bad(1, "missing or wrong header"));
    }
    let num = |s: &str, line| s.parse::<f64>().map_err(|_| bad(line, "invalid number"));
    lines
        .enumerate()
        .map(|(i, line)| {
            let n = i + 2;
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(bad(n, "expected 7 fields"));
            }
            let values = if f[2..].iter().all(|s| s.is_empty()) {
                None
            } else {
                let mut v = [0.0; 5];
                for (dst, src) in v.iter_mut().zip(&f[2..]) {
                    *dst = num(src, n)?;
                }
                Some(v)
            };
            Ok(CsvRecord {
                theta: num(f[0], n)?,
                method: f[1].to_string(),
                values,
            })
        })
        .collect()
}

fn row_json(r: &Row) -> Value {
    match &r.result {
        Ok(a) => json!({
            "theta": r.theta,
            "method": r.method.name(),
            "re_F": a.value.re(),
            "im_F": a.value.im(),
            "abs_F2": a.value.norm_sqr(),
            "dsigma_dtheta": dcs_from_reduced(a.value, r.k),
            "err_estimate": a.err_estimate,
            "terms_or_panels": a.terms_or_panels,
        }),
        Err(e) => json!({ "theta": r.theta, "method": r.method.name(), "error": e }),
    }
}

fn render_rows(rows: &[Row], spec: Value, format: Format) -> String {
    match format {
        Format::Csv => write_csv(&rows.iter().map(CsvRecord::from).collect::<Vec<_>>()),
        Format::Json => document(spec, json!(rows.iter().map(row_json).collect::<Vec<_>>())),
    }
}

fn document(spec: Value, rows: Value) -> String {
    let doc = json!({ "spec": spec, "rows": rows, "version": env!("CARGO_PKG_VERSION") });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialise");
    s.push('\n');
    s
}

fn sweep_angles(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Argument(format!("--n must be at least 2, got {n}")));
    }
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(Error::Argument(format!(
            "need theta-min < theta-max, got [{lo}, {hi}]"
        )));
    }
    for t in [lo, hi] {
        Angle::new(t)?;
    }
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect())
}

fn emit(text: String, out: Option<&PathBuf>) -> Result<String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map(|_| String::new())
            .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display()))),
        None => Ok(text),
    }
}

fn execute(cli: Cli) -> Result<(String, i32)> {
    match cli.command {
        Command::Amplitude {
            physics,
            theta,
            method,
            numerics,
            output,
        } => {
            let x = physics.coupling()?;
            let kin = physics.kinematics()?;
            let a = evaluate(x, theta, method, &numerics)?;
            let row = Row {
                theta,
                method,
                result: Ok(a),
                k: kin.k(),
            };
            let mut spec = physics.spec(x, &kin);
            spec["theta"] = json!(theta);
            spec["method"] = json!(method.name());
            Ok((
                emit(
                    render_rows(&[row], spec, output.format),
                    output.out.as_ref(),
                )?,
                EXIT_OK,
            ))
        }
        Command::Sweep {
            physics,
            theta_min,
            theta_max,
            n,
            mut method,
            numerics,
            output,
        } => {
            let x = physics.coupling()?;
            let kin = physics.kinematics()?;
            let thetas = sweep_angles(theta_min, theta_max, n)?;
            method.sort_by_key(|m| m.name());
            method.dedup();
            let jobs: Vec<(f64, Method)> = thetas
                .iter()
                .flat_map(|&t| method.iter().map(move |&m| (t, m)))
                .collect();
            let rows: Vec<Row> = jobs
                .par_iter()
                .map(|&(t, m)| Row {
                    theta: t,
                    method: m,
                    result: evaluate(x, t, m, &numerics).map_err(|e| e.to_string()),
                    k: kin.k(),
                })
                .collect();
            let mut spec = physics.spec(x, &kin);
            spec["theta_range"] = json!([theta_min, theta_max]);
            spec["theta_count"] = json!(n);
            spec["methods"] = json!(method.iter().map(|m| m.name()).collect::<Vec<_>>());
            Ok((
                emit(render_rows(&rows, spec, output.format), output.out.as_ref())?,
                EXIT_OK,
            ))
        }
        Command::Sigma {
            physics,
            lmax,
            output,
        } => {
            let x = physics.coupling()?;
            let k = physics.kinematics()?.k();
            let mut p = PwParams::for_coupling(x);
            if let Some(l) = lmax {
                p.l_max = l;
            }
            let closed = sigma_closed_form(x, k);
            let sum = partial_waves::sigma_sum(x, &p)?;
            let from_sum = 4.0 * sum.value / k;
            let rel = if closed == 0.0 {
                from_sum.abs()
            } else {
                (from_sum - closed).abs() / closed
            };
            let text = match output.format {
                Format::Csv => format!(
                    "x,k,sigma_closed_form,sigma_from_sum,rel_diff\n{},{},{},{},{}\n",
                    fmt_num(x.value()),
                    fmt_num(k),
                    fmt_num(closed),
                    fmt_num(from_sum),
                    fmt_num(rel)
                ),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&json!({
                        "x": x.value(),
                        "k": k,
                        "sigma_closed_form": closed,
                        "sigma_from_sum": from_sum,
                        "rel_diff": rel,
                        "l_max": sum.l_max,
                        "err_estimate": sum.err_estimate / k,
                    }))
                    .expect("json values serialise");
                    s.push('\n');
                    s
                }
            };
            Ok((emit(text, output.out.as_ref())?, EXIT_OK))
        }
        Command::Classical {
            physics,
            theta,
            lmax,
            output,
        } => {
            let x = physics.coupling()?;
            x.require_interacting()?;
            let k = physics.kinematics()?.k();
            let angle = Angle::new(theta)?;
            let mut p = PwParams::for_coupling(x);
            if let Some(l) = lmax {
                p.l_max = l;
            }
            let exact = dcs_from_reduced(partial_waves::reduced_amplitude(x, angle, &p)?.value, k);
            let classic = classical::classical_dcs((x.value() / k).powi(2), angle)?;
            let rel = (exact - classic).abs() / classic;
            let text = match output.format {
                Format::Csv => format!(
                    "x,k,theta,dsigma_dtheta,dsigma_dtheta_classical,rel_diff\n{},{},{},{},{},{}\n",
                    fmt_num(x.value()),
                    fmt_num(k),
                    fmt_num(theta),
                    fmt_num(exact),
                    fmt_num(classic),
                    fmt_num(rel)
                ),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&json!({
                        "x": x.value(),
                        "k": k,
                        "theta": theta,
                        "dsigma_dtheta": exact,
                        "dsigma_dtheta_classical": classic,
                        "rel_diff": rel,
                    }))
                    .expect("json values serialise");
                    s.push('\n');
                    s
                }
            };
            Ok((emit(text, output.out.as_ref())?, EXIT_OK))
        }
        Command::Validate { x_list, tol, out } => {
            let mut config = SuiteConfig::default();
            if let Some(t) = tol {
                if !(t.is_finite() && t >= 0.0) {
                    return Err(Error::Argument(format!(
                        "--tol must be nonnegative, got {t}"
                    )));
                }
                config = config.with_tolerance(t);
            }
            let report = run_full_suite(&x_list, &config);
            let mut s = serde_json::to_string_pretty(&report).expect("report serialises");
            s.push('\n');
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            };
            Ok((emit(s, out.as_ref())?, code))
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Default::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    code: EXIT_OK,
                    ..Default::default()
                }
            };
        }
    };
    match execute(cli) {
        Ok((stdout, code)) => {
            let stderr = if code == EXIT_VALIDATION {
                "validation failed\n".to_string()
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr,
                code,
            }
        }
        Err(e) => Outcome {
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
            ..Default::default()
        },
    }
}
