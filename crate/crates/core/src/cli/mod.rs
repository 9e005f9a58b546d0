//! Command-line front end.

pub mod input;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::algebraic::Algebraic;
use crate::ellipse::{classify, Classification, ClassificationReport, Verdict};
use crate::error::Error;
use crate::extended::Extended;
use crate::kippenhahn::{components, detect_multiple_tangents, envelope_points, uniform_grid, KippenhahnPolynomial};
use crate::kippenhahn::{CurveComponent, TangentLineEvent};
use crate::matrix::{exact_spectrum, XiParameters};
use crate::range::{rank_k_analytic, rank_k_numeric, region_distance, ConvexRegion};
use crate::scalar::{Scalar, Tolerance};
use crate::verify::{check_xi, run_verify, BatteryConfig};
use input::{resolve, FromLiteral, Input};
use svg::SvgPlot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
    Extended,
}

#[derive(Debug, Parser)]
#[command(name = "kippenhahn", version, about = "Kippenhahn curves and rank-k numerical ranges of reciprocal tridiagonal matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Comma-separated xi values; accepts fractions and sqrt3, sqrt5, phi, c7, c7_2, c7_3
    #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Matrix JSON, inline or a file path: {"n", "superdiag": [[re, im], ..]} or {"xi": [..]}
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<String>,
    /// Random xi of this dimension (verify: restrict the battery to it)
    #[arg(long, value_name = "INT")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "float")]
    pub mode: Mode,
    /// Relative tolerance for criterion and divisibility checks [default: 1e-9, or
    /// 10^(1-d) when --xi has literals with d >= 6 significant digits]
    #[arg(long, value_name = "FLOAT")]
    pub tolerance: Option<f64>,
    /// Angular grid size
    #[arg(long, default_value_t = 2048)]
    pub grid: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the curve splits into ellipses (n = 4, 5, 6)
    Classify(CommonArgs),
    /// Sample the curve and its components
    Curve(CommonArgs),
    /// Rank-k numerical range, numerically and in closed form when available
    Range {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
    },
    /// Run the oracle battery, or the consistency checks for one input
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Random xi per dimension
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Print the Kippenhahn polynomial coefficients
    Poly(CommonArgs),
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Unsupported(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedDimension(n) => CliError::Unsupported(n),
            Error::InvalidInput(m) => CliError::Input(m),
        }
    }
}

type CliResult = std::result::Result<i32, CliError>;

impl CommonArgs {
    fn input(&self) -> std::result::Result<Input, CliError> {
        if self.grid < 8 {
            return Err(CliError::Input(format!("--grid must be at least 8, got {}", self.grid)));
        }
        Ok(resolve(self.xi.as_deref(), self.matrix.as_deref(), self.n, self.seed)?)
    }

    fn tolerance(&self) -> std::result::Result<Tolerance, CliError> {
        match self.tolerance {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                Err(CliError::Input(format!("--tolerance must be positive, got {t}")))
            }
            Some(t) => Ok(Tolerance::with_rel(t)),
            None if self.mode == Mode::Extended => Ok(Tolerance::EXTENDED),
            None => {
                // six or more printed digits mark values rounded at the last digit
                let digits = self.xi.as_deref().map_or(0, input::literal_digits);
                if digits >= 6 {
                    Ok(Tolerance::with_rel(10f64.powi(1 - digits as i32).max(Tolerance::DOUBLE.rel)))
                } else {
                    Ok(Tolerance::DOUBLE)
                }
            }
        }
    }
}

fn emit_text(text: &str, out: Option<&Path>) -> std::result::Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("cannot write output: {e}")))
        }
    }
}

fn emit_json<S: Serialize>(value: &S, out: Option<&Path>) -> std::result::Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    emit_text(&text, out)
}

/// Exact textual form of scalar values.
trait ExactText: Scalar {
    fn text(&self) -> String;
}

impl ExactText for Algebraic {
    fn text(&self) -> String {
        self.to_string()
    }
}

impl ExactText for Extended {
    fn text(&self) -> String {
        self.to_fraction_string()
    }
}

#[derive(Debug, Serialize)]
struct ExactEllipseText {
    p: String,
    x_sq: String,
    c_sq: String,
}

#[derive(Debug, Serialize)]
struct ExactBlock {
    xi: Vec<String>,
    ellipses: Vec<ExactEllipseText>,
}

fn exact_block<T: ExactText>(c: &Classification<T>) -> ExactBlock {
    ExactBlock {
        xi: c.xi.iter().map(ExactText::text).collect(),
        ellipses: c
            .ellipses
            .iter()
            .map(|e| ExactEllipseText { p: e.center.text(), x_sq: e.half_focal.square().text(), c_sq: e.c_sq.text() })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
struct ClassifyOutput {
    mode: Mode,
    #[serde(flatten)]
    report: ClassificationReport,
    multiple_tangents: Vec<TangentLineEvent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ExactBlock>,
}

fn classify_exact<T: ExactText + FromLiteral>(
    input: &Input,
    tol: &Tolerance,
) -> std::result::Result<(ClassificationReport, ExactBlock), CliError> {
    let c = classify::<T>(&input.xi_as::<T>()?, tol)?;
    Ok((c.report(), exact_block(&c)))
}

fn curve_plot(input: &Input, grid: usize, extra: &[Complex64]) -> (SvgPlot, Vec<CurveComponent>) {
    let samples = envelope_points(&input.matrix, &uniform_grid(grid));
    let comps = components(&samples, input.n());
    let spectrum: Vec<Complex64> =
        exact_spectrum(input.n()).eigenvalues.iter().map(|s| Complex64::new(*s, 0.0)).collect();
    let mut bounds: Vec<Complex64> = samples.iter().map(|s| s.point).collect();
    bounds.extend(extra);
    let mut plot = SvgPlot::new(&bounds);
    for c in &comps {
        plot.component(&c.points, c.is_point);
    }
    for z in spectrum {
        plot.marker(z, "focus", "#c0392b");
    }
    if input.n() % 2 == 1 {
        plot.marker(Complex64::new(0.0, 0.0), "origin", "#2e7d32");
    }
    (plot, comps)
}

fn write_svg(plot: SvgPlot, path: &Path) -> std::result::Result<(), CliError> {
    std::fs::write(path, plot.finish()).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn tangents(input: &Input, tol: &Tolerance) -> Vec<TangentLineEvent> {
    XiParameters::new(input.xi.clone())
        .ok()
        .and_then(|p| detect_multiple_tangents(&p, tol).ok())
        .unwrap_or_default()
}

fn cmd_classify(args: &CommonArgs) -> CliResult {
    let input = args.input()?;
    let tol = args.tolerance()?;
    let n = input.n();
    if !(4..=6).contains(&n) {
        return Err(CliError::Unsupported(n));
    }
    let (report, exact) = match args.mode {
        Mode::Float => (classify::<f64>(&input.xi, &tol)?.report(), None),
        Mode::Exact => classify_exact::<Algebraic>(&input, &tol).map(|(r, e)| (r, Some(e)))?,
        Mode::Extended => classify_exact::<Extended>(&input, &tol).map(|(r, e)| (r, Some(e)))?,
    };
    if let Some(path) = &args.svg {
        let foci: Vec<Complex64> = report
            .ellipses
            .iter()
            .flat_map(|e| [Complex64::new(e.foci.0, 0.0), Complex64::new(e.foci.1, 0.0)])
            .collect();
        let (plot, _) = curve_plot(&input, args.grid, &foci);
        write_svg(plot, path)?;
    }
    let out = ClassifyOutput { mode: args.mode, multiple_tangents: tangents(&input, &tol), report, exact };
    emit_json(&out, args.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct SampleOut {
    theta: f64,
    branch: usize,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct ComponentOut {
    kind: &'static str,
    vertices: usize,
    centroid: [f64; 2],
    diameter: f64,
}

#[derive(Debug, Serialize)]
struct CurveOutput {
    n: usize,
    xi: Vec<f64>,
    grid: usize,
    components: Vec<ComponentOut>,
    multiple_tangents: Vec<TangentLineEvent>,
    samples: Vec<SampleOut>,
}

fn cmd_curve(args: &CommonArgs) -> CliResult {
    let input = args.input()?;
    let tol = args.tolerance()?;
    let samples = envelope_points(&input.matrix, &uniform_grid(args.grid));
    let comps = components(&samples, input.n());
    if let Some(path) = &args.svg {
        write_svg(curve_plot(&input, args.grid, &[]).0, path)?;
    }
    let out = CurveOutput {
        n: input.n(),
        xi: input.xi.clone(),
        grid: args.grid,
        components: comps
            .iter()
            .map(|c| {
                let g = c.centroid();
                ComponentOut {
                    kind: if c.is_point { "point" } else { "loop" },
                    vertices: c.points.len(),
                    centroid: [g.re, g.im],
                    diameter: c.diameter(),
                }
            })
            .collect(),
        multiple_tangents: tangents(&input, &tol),
        samples: samples
            .iter()
            .map(|s| SampleOut { theta: s.theta, branch: s.branch, re: s.point.re, im: s.point.im })
            .collect(),
    };
    emit_json(&out, args.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct RangeOutput {
    n: usize,
    k: usize,
    xi: Vec<f64>,
    grid: usize,
    region: ConvexRegion,
    analytic: Option<ConvexRegion>,
    distance: Option<f64>,
}

fn cmd_range(args: &CommonArgs, k: usize) -> CliResult {
    let input = args.input()?;
    let tol = args.tolerance()?;
    let region = rank_k_numeric(&input.matrix, k, args.grid)?;
    let analytic = if (4..=6).contains(&input.n()) {
        let report = classify::<f64>(&input.xi, &tol)?.report();
        (report.verdict != Verdict::MixedNone).then(|| rank_k_analytic(&report, k)).transpose()?
    } else {
        None
    };
    if let Some(path) = &args.svg {
        let (mut plot, _) = curve_plot(&input, args.grid, &region.points);
        plot.region(&region);
        write_svg(plot, path)?;
    }
    let distance = analytic.as_ref().map(|a| region_distance(&region, a));
    let out = RangeOutput { n: input.n(), k, xi: input.xi.clone(), grid: args.grid, region, analytic, distance };
    emit_json(&out, args.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &CommonArgs, samples: usize) -> CliResult {
    let tol = args.tolerance()?;
    if args.grid < 8 {
        return Err(CliError::Input(format!("--grid must be at least 8, got {}", args.grid)));
    }
    let dims = match args.n {
        Some(n) if (4..=6).contains(&n) => vec![n],
        Some(n) => return Err(CliError::Unsupported(n)),
        None => vec![4, 5, 6],
    };
    let cfg = BatteryConfig { seed: args.seed, samples, dims, grid: 64, tol };
    if args.xi.is_some() || args.matrix.is_some() {
        let input = resolve(args.xi.as_deref(), args.matrix.as_deref(), None, args.seed)?;
        if !(4..=6).contains(&input.n()) {
            return Err(CliError::Unsupported(input.n()));
        }
        let outcome = check_xi(&input.xi, &cfg);
        emit_json(&outcome, args.out.as_deref())?;
        return Ok(if outcome.passed() { EXIT_OK } else { EXIT_VERIFY });
    }
    let report = run_verify(&cfg, args.grid);
    emit_json(&report, args.out.as_deref())?;
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Debug, Serialize)]
struct PolyOutput {
    n: usize,
    mode: Mode,
    /// `det(Re(e^{i theta} A) - lambda I)` in terms of `P(zeta, rho)`.
    determinant: &'static str,
    /// `coeffs[j][i]` multiplies `zeta^j rho^i`.
    coeffs: Vec<Vec<Value>>,
}

fn poly_coeffs<T: Scalar>(xi: &[T], text: impl Fn(&T) -> Value) -> Vec<Vec<Value>> {
    let p = KippenhahnPolynomial::from_recurrence(xi);
    p.poly().coeffs().iter().map(|c| c.iter().map(&text).collect()).collect()
}

fn cmd_poly(args: &CommonArgs) -> CliResult {
    let input = args.input()?;
    let coeffs = match args.mode {
        Mode::Float => poly_coeffs(&input.xi, |v| Value::from(*v)),
        Mode::Exact => poly_coeffs(&input.xi_as::<Algebraic>()?, |v| Value::from(v.text())),
        Mode::Extended => poly_coeffs(&input.xi_as::<Extended>()?, |v| Value::from(v.text())),
    };
    let n = input.n();
    let determinant = if n % 2 == 1 { "-lambda P(lambda^2, cos^2 theta)" } else { "P(lambda^2, cos^2 theta)" };
    emit_json(&PolyOutput { n, mode: args.mode, determinant, coeffs }, args.out.as_deref())?;
    Ok(EXIT_OK)
}

/// Parse `args` (program name first), run the command and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Range { common, k } => cmd_range(common, *k),
        Command::Verify { common, samples } => cmd_verify(common, *samples),
        Command::Poly(a) => cmd_poly(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Unsupported(n)) => {
            eprintln!("error: unsupported dimension n = {n}; classification covers n = 4, 5, 6");
            EXIT_UNSUPPORTED
        }
    }
}
