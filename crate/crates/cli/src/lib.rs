//! Command-line front end for `euclidean-algebra`.
//!
//! Elements are passed as JSON arrays. Results go to stdout, diagnostics to
//! stderr. Exit codes: 0 success, 2 usage error, 3 zero divisor, 4 numeric
//! failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use euclidean_algebra::analytic::{self, VectorField};
use euclidean_algebra::group::{self, R4Plane, UnitSign};
use euclidean_algebra::haar::{self, HaarEstimate, RegionBox};
use euclidean_algebra::{
    algebra_norm, inverse_via_spectrum, multiply_naive, power, AlgebraContext, AlgebraError, Element, Execution,
    MonteCarlo, SpectralPlan,
};

mod render;

pub use render::{format_g, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ZERO_DIVISOR: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ealg", version, about = "Arithmetic and numerical checks in R_n = R[x]/(x^n + 1)")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Seed for every randomized subcommand.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
    /// Run Monte Carlo chunks on one thread. Results are identical either way.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Args, Debug)]
struct Single {
    #[arg(short = 'n')]
    n: usize,
    #[arg(allow_hyphen_values = true)]
    a: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two elements.
    Mul {
        #[arg(short = 'n')]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// O(n^2) negacyclic convolution.
        #[arg(long, conflicts_with = "fast")]
        naive: bool,
        /// Spectral multiplication (default); below n = 64 this is the convolution too.
        #[arg(long)]
        fast: bool,
    },
    /// Integer power `A^M`.
    Pow {
        #[command(flatten)]
        x: Single,
        m: u64,
    },
    /// Multiplicative inverse.
    Inv {
        #[command(flatten)]
        x: Single,
        #[arg(long, value_enum, default_value_t = InverseMethod::Spectral)]
        method: InverseMethod,
    },
    /// Algebra norm `|det ς(A)|`.
    Norm(Single),
    /// Signed `det ς(A)`.
    Det(Single),
    /// Eigenvalues of `ς(A)` as `[re, im]` pairs.
    Spectrum(Single),
    #[command(subcommand)]
    Zdiv(Zdiv),
    #[command(subcommand)]
    Haar(Haar),
    Analytic(AnalyticArgs),
    /// Square roots of +1 or -1 in R_4.
    Roots4 {
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InverseMethod {
    Spectral,
    Linear,
}

#[derive(Subcommand, Debug)]
enum Zdiv {
    /// Determinant and spectral ratio of A.
    Check(Single),
    /// A point on zero-divisor plane I or II of R_4.
    Plane4 {
        #[arg(allow_hyphen_values = true)]
        s: f64,
        #[arg(allow_hyphen_values = true)]
        t: f64,
        plane: String,
    },
    /// Fraction of unit-ball samples with |det| < eps.
    Measure {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Args, Debug)]
struct BoxArgs {
    #[arg(short = 'n')]
    n: usize,
    /// Lower corner, JSON array.
    #[arg(long, allow_hyphen_values = true)]
    lower: String,
    /// Upper corner, JSON array.
    #[arg(long, allow_hyphen_values = true)]
    upper: String,
}

#[derive(Subcommand, Debug)]
enum Haar {
    /// Haar measure of a box.
    Box(BoxArgs),
    /// Compares the measure of a box with that of its translate `A ⊛ box`.
    Invariance {
        #[command(flatten)]
        region: BoxArgs,
        #[arg(long = "a", allow_hyphen_values = true)]
        a: String,
        /// Agreement threshold in combined standard errors.
        #[arg(long, default_value_t = 3.0)]
        k: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Probe {
    Cr,
    Diff,
    Laplacian,
    Meanvalue,
    Liouville,
}

#[derive(Args, Debug)]
struct AnalyticArgs {
    #[arg(value_enum)]
    probe: Probe,
    /// identity, square, cube, conjugate2d, or poly:<json>.
    #[arg(long)]
    field: String,
    #[arg(short = 'n')]
    n: usize,
    /// Probe point, JSON array; defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// Sphere radius for meanvalue.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Radii for liouville, JSON array.
    #[arg(long, default_value = "[1,2,4]")]
    radii: String,
    /// Finite-difference step.
    #[arg(long)]
    h: Option<f64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Algebra(AlgebraError),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Algebra(e) => match e {
                AlgebraError::ZeroDivisor { .. } => EXIT_ZERO_DIVISOR,
                AlgebraError::DimensionMismatch { .. }
                | AlgebraError::InvalidDimension(_)
                | AlgebraError::InvalidTolerance(_)
                | AlgebraError::NonFinite(_)
                | AlgebraError::OddDimension(_)
                | AlgebraError::EvenDimension(_)
                | AlgebraError::InvalidArgument(_)
                | AlgebraError::NotAZeroDivisor { .. } => EXIT_USAGE,
                _ => EXIT_NUMERIC,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Algebra(e) => e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), writes the result to `out`
/// and diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let rendered = e.render().to_string();
                    let line = rendered.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{line}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(value) => {
            let text = match cli.format {
                Format::Plain => value.to_plain(),
                Format::Json => value.to_json(),
            };
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn context(cli: &Cli, n: usize) -> CliResult<AlgebraContext> {
    let base = AlgebraContext::new(n)?;
    Ok(AlgebraContext::with_tolerances(
        n,
        cli.tol_eq.unwrap_or(base.tol_eq()),
        cli.tol_zero.unwrap_or(base.tol_zero()),
    )?)
}

fn parse_floats(what: &str, s: &str) -> CliResult<Vec<f64>> {
    serde_json::from_str(s).map_err(|e| CliError::Usage(format!("{what}: expected a JSON array of numbers ({e})")))
}

fn parse_element(ctx: &AlgebraContext, what: &str, s: &str) -> CliResult<Element> {
    let coeffs = parse_floats(what, s)?;
    if coeffs.len() != ctx.n() {
        return Err(CliError::Usage(format!("{what}: expected {} coefficients, got {}", ctx.n(), coeffs.len())));
    }
    Ok(ctx.element(coeffs)?)
}

fn parse_box(cli: &Cli, b: &BoxArgs) -> CliResult<(AlgebraContext, RegionBox)> {
    let ctx = context(cli, b.n)?;
    let lower = parse_floats("--lower", &b.lower)?;
    let upper = parse_floats("--upper", &b.upper)?;
    if lower.len() != b.n || upper.len() != b.n {
        return Err(CliError::Usage(format!("box corners must have {} coordinates", b.n)));
    }
    Ok((ctx, RegionBox::new(lower, upper)?))
}

fn monte_carlo(cli: &Cli, seed: u64) -> MonteCarlo {
    let mc = MonteCarlo::new(cli.samples, seed);
    if cli.sequential {
        mc.with_execution(Execution::Sequential)
    } else {
        mc
    }
}

fn element_value(u: &Element) -> Value {
    Value::nums(u.coeffs())
}

fn estimate_value(e: &HaarEstimate) -> Value {
    Value::map([
        ("value", Value::Num(e.value)),
        ("std_error", Value::Num(e.std_error)),
        ("samples", Value::Int(e.samples as i64)),
        ("clipped", Value::Int(e.clipped as i64)),
        ("reliable", Value::Bool(e.is_reliable())),
    ])
}

fn execute(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Mul { n, a, b, naive, .. } => {
            let ctx = context(cli, *n)?;
            let u = parse_element(&ctx, "A", a)?;
            let v = parse_element(&ctx, "B", b)?;
            let w = if *naive { multiply_naive(&u, &v)? } else { SpectralPlan::new(*n).multiply(&u, &v)? };
            Ok(element_value(&w))
        }
        Command::Pow { x, m } => {
            let ctx = context(cli, x.n)?;
            let u = parse_element(&ctx, "A", &x.a)?;
            let p = power(&u, *m);
            if !p.is_finite() {
                return Err(AlgebraError::NonFinite(0).into());
            }
            Ok(element_value(&p))
        }
        Command::Inv { x, method } => {
            let ctx = context(cli, x.n)?;
            let u = parse_element(&ctx, "A", &x.a)?;
            let inv = match method {
                InverseMethod::Spectral => inverse_via_spectrum(&u)?,
                InverseMethod::Linear => group::inverse_cayley_hamilton(&u)?,
            };
            Ok(element_value(&inv))
        }
        Command::Norm(x) => {
            let ctx = context(cli, x.n)?;
            Ok(Value::Num(algebra_norm(&parse_element(&ctx, "A", &x.a)?)))
        }
        Command::Det(x) => {
            let ctx = context(cli, x.n)?;
            let u = parse_element(&ctx, "A", &x.a)?;
            let det = SpectralPlan::new(x.n).determinant(&u)?;
            if det.overflowed() {
                Ok(Value::map([("sign", Value::Num(det.sign())), ("log_abs", Value::Num(det.log_abs()))]))
            } else {
                Ok(Value::Num(det.value()))
            }
        }
        Command::Spectrum(x) => {
            let ctx = context(cli, x.n)?;
            let s = SpectralPlan::new(x.n).spectrum(&parse_element(&ctx, "A", &x.a)?)?;
            Ok(Value::List(s.values().iter().map(|z| Value::nums(&[z.re, z.im])).collect()))
        }
        Command::Zdiv(z) => zdiv(cli, z),
        Command::Haar(h) => haar_cmd(cli, h),
        Command::Analytic(a) => analytic_cmd(cli, a),
        Command::Roots4 { sign } => {
            let sign: UnitSign = sign.parse()?;
            let ctx = context(cli, 4)?;
            let roots = group::square_roots_of_pm1_r4(&ctx, sign)?;
            Ok(Value::List(roots.iter().map(element_value).collect()))
        }
    }
}

fn zdiv(cli: &Cli, z: &Zdiv) -> CliResult<Value> {
    match z {
        Zdiv::Check(x) => {
            let ctx = context(cli, x.n)?;
            let r = group::is_zero_divisor(&parse_element(&ctx, "A", &x.a)?);
            Ok(Value::map([
                ("det", Value::Num(r.det_value)),
                ("min_eigen_ratio", Value::Num(r.min_eigen_ratio)),
                ("is_zero_divisor", Value::Bool(r.is_zero_divisor)),
            ]))
        }
        Zdiv::Plane4 { s, t, plane } => {
            let plane: R4Plane = plane.parse()?;
            if !(s.is_finite() && t.is_finite()) {
                return Err(CliError::Usage("S and T must be finite".into()));
            }
            Ok(element_value(&group::r4_zero_divisor_point(*s, *t, plane)))
        }
        Zdiv::Measure { n, eps } => {
            let ctx = context(cli, *n)?;
            let m = group::estimate_zero_divisor_measure(&ctx, *eps, monte_carlo(cli, cli.seed))?;
            Ok(Value::map([
                ("seed", Value::Int(cli.seed as i64)),
                ("eps", Value::Num(*eps)),
                ("samples", Value::Int(m.samples as i64)),
                ("hits", Value::Int(m.hits as i64)),
                ("fraction", Value::Num(m.fraction)),
                ("std_error", Value::Num(m.std_error)),
            ]))
        }
    }
}

fn haar_cmd(cli: &Cli, h: &Haar) -> CliResult<Value> {
    match h {
        Haar::Box(b) => {
            let (ctx, region) = parse_box(cli, b)?;
            let est = haar::haar_measure_mc(&ctx, &region, monte_carlo(cli, cli.seed))?;
            let mut fields = vec![("seed".to_string(), Value::Int(cli.seed as i64))];
            if let Value::Map(rest) = estimate_value(&est) {
                fields.extend(rest);
            }
            Ok(Value::Map(fields))
        }
        Haar::Invariance { region, a, k } => {
            let (ctx, region) = parse_box(cli, region)?;
            let a = parse_element(&ctx, "--a", a)?;
            // Independent streams for the two estimates.
            let translated_seed = cli.seed.wrapping_add(1);
            let original = haar::haar_measure_mc(&ctx, &region, monte_carlo(cli, cli.seed))?;
            let moved = haar::translate_region(&a, &region, monte_carlo(cli, translated_seed))?;
            let sigma = (original.std_error.powi(2) + moved.std_error.powi(2)).sqrt();
            Ok(Value::map([
                ("seed", Value::Int(cli.seed as i64)),
                ("translated_seed", Value::Int(translated_seed as i64)),
                ("original", estimate_value(&original)),
                ("translated", estimate_value(&moved)),
                ("difference", Value::Num(moved.value - original.value)),
                ("combined_std_error", Value::Num(sigma)),
                ("invariant", Value::Bool(original.agrees_with(&moved, *k))),
            ]))
        }
    }
}

fn analytic_cmd(cli: &Cli, a: &AnalyticArgs) -> CliResult<Value> {
    let ctx = context(cli, a.n)?;
    let mut field = VectorField::from_name(&a.field, &ctx)?;
    if let Some(h) = a.h {
        if !(h > 0.0 && h.is_finite()) {
            return Err(CliError::Usage(format!("--h must be positive, got {h}")));
        }
        field = field.with_step(h);
    }
    let at = match &a.at {
        Some(s) => parse_element(&ctx, "--at", s)?,
        None => ctx.zero(),
    };
    match a.probe {
        Probe::Cr => Ok(Value::map([("residual", Value::Num(analytic::cauchy_riemann_residual(&field, &at)?))])),
        Probe::Diff => {
            let r = analytic::differentiability_probe(&field, &at, cli.seed)?;
            Ok(Value::map([
                ("seed", Value::Int(cli.seed as i64)),
                ("axis_residual", Value::Num(r.axis_residual)),
                ("directional_residual", Value::Num(r.directional_residual)),
            ]))
        }
        Probe::Laplacian => Ok(Value::nums(&analytic::laplacian(&field, &at)?)),
        Probe::Meanvalue => {
            let m = analytic::sphere_mean(&field, &at, a.r, monte_carlo(cli, cli.seed))?;
            let center = field.eval(&at)?;
            Ok(Value::map([
                ("seed", Value::Int(cli.seed as i64)),
                ("points", Value::Int(m.points as i64)),
                ("mean", Value::nums(&m.mean)),
                ("std_error", Value::nums(&m.std_error)),
                ("center_value", element_value(&center)),
                ("within_3_sigma", Value::Bool(m.worst_sigma_ratio(&center, 3.0) <= 1.0)),
            ]))
        }
        Probe::Liouville => {
            let radii = parse_floats("--radii", &a.radii)?;
            let maxima = analytic::liouville_probe(&field, &ctx, &radii, monte_carlo(cli, cli.seed))?;
            Ok(Value::map([
                ("seed", Value::Int(cli.seed as i64)),
                ("radii", Value::nums(&radii)),
                ("max_norm", Value::nums(&maxima)),
            ]))
        }
    }
}
