//! The `alpharm` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 domain error, 3 a
//! verification check failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    center_deviation_bound, gradient_bound, growth_bound, heinz_boundary_bound, increment_bound,
};
use crate::error::{domain, Error, Result};
use crate::kernel::{kernel_mean, kernel_mean_slope, Alpha, DiskPoint, MeanMethod, DEFAULT_QUAD_N};
use crate::landau::{landau_beta, landau_hardy, LandauResult};
use crate::solution::{BoundaryData, HardyExponent, PolarGrid, SeriesSolution, DEFAULT_ORDER};
use crate::verify::{measure_normalization, verify_solution, VerifyConfig};

/// Environment variable holding the seed of the random verification points.
pub const SEED_VAR: &str = "ALPHARM_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "alpharm", version, about = "Alpha-harmonic functions on the unit disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a solution on a polar grid (CSV: r,theta,re,im,abs).
    Eval(EvalArgs),
    /// Circular kernel mean and its slope (CSV: r,M_alpha_closed,M_alpha_quad,slope).
    Kernel(KernelArgs),
    /// Run the check suite on a solution (JSON lines, one report per check).
    Verify(VerifyArgs),
    /// Tabulate the bound functions over radii (CSV).
    Bounds(BoundsArgs),
    /// Univalence and covering radii (JSON).
    Landau(LandauArgs),
    /// Sweep the Hardy-space radii over a range of alpha (CSV).
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolutionInput {
    /// Solution JSON document.
    #[arg(long, conflicts_with = "boundary")]
    solution: Option<PathBuf>,
    /// Boundary CSV with columns theta,re,im.
    #[arg(long)]
    boundary: Option<PathBuf>,
    /// Alpha for boundary input (> -1).
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Truncation order for boundary input [default: min(64, (N-1)/4)].
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    input: SolutionInput,
    /// Radii, a single value or a:b:n.
    #[arg(long, default_value = "0:0.9:10")]
    r: Grid,
    /// Angles per radius, equally spaced from 0.
    #[arg(long, default_value_t = 8)]
    angles: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct KernelArgs {
    /// Alpha (> -1).
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Radii in [0, 1), a single value or a:b:n.
    #[arg(long)]
    r: Grid,
    /// Trapezoid nodes; doubled until converged unless --fixed.
    #[arg(long, default_value_t = DEFAULT_QUAD_N)]
    quad_n: usize,
    /// Use exactly --quad-n nodes.
    #[arg(long)]
    fixed: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: SolutionInput,
    /// Sup-estimate grid, radial x angular.
    #[arg(long, default_value = "48x256")]
    grid: GridSize,
    /// Pointwise tolerance relative to M.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Circle nodes for the Parseval and Hardy means.
    #[arg(long, default_value_t = 1024)]
    quad_n: usize,
    /// Random interior points.
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Random points are drawn from |z| <= radius.
    #[arg(long, default_value_t = 0.95)]
    radius: f64,
    /// Use this bound M instead of the sup estimate.
    #[arg(long)]
    m: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Alpha (> -1).
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Bound M on |f|.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Radii in [0, 1), a single value or a:b:n.
    #[arg(long, default_value = "0:0.9:10")]
    r: Grid,
    /// Hardy exponent for the growth column (>= 1 or inf).
    #[arg(long, default_value = "2")]
    p: String,
    /// Hardy norm for the growth column.
    #[arg(long, default_value_t = 1.0)]
    norm: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct LandauArgs {
    /// Alpha in (-1, 0].
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Hardy exponent (>= 1 or inf).
    #[arg(long, default_value = "1")]
    p: String,
    /// Hardy norm of the solution.
    #[arg(long, default_value_t = 1.0)]
    norm: f64,
    /// |J_f(0)| of the solution.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Measure beta = |J_f(0)| and M = sup|f| from --solution instead.
    #[arg(long, requires = "solution")]
    beta_mode: bool,
    /// Solution JSON for --beta-mode.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Sup-estimate grid for --beta-mode, radial x angular.
    #[arg(long, default_value = "48x256")]
    grid: GridSize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Alpha values in (-1, 0], a single value or a:b:n.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Grid,
    /// Hardy exponent (>= 1 or inf).
    #[arg(long, default_value = "1")]
    p: String,
    /// Hardy norm of the solution.
    #[arg(long, default_value_t = 1.0)]
    norm: f64,
    /// |J_f(0)| of the solution.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[command(flatten)]
    output: Output,
}

/// A single value or `a:b:n`, `n` equally spaced values from `a` to `b` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("invalid number {t:?}"));
        match parts.as_slice() {
            [v] => Ok(Grid(vec![num(v)?])),
            [a, b, n] => {
                let (a, b) = (num(a)?, num(b)?);
                let n: usize = n.trim().parse().map_err(|_| format!("invalid count {n:?}"))?;
                match n {
                    0 => Err("grid count must be positive".into()),
                    1 => Ok(Grid(vec![a])),
                    _ => Ok(Grid(
                        (0..n)
                            .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
                            .collect(),
                    )),
                }
            }
            _ => Err(format!("expected a number or a:b:n, got {s:?}")),
        }
    }
}

/// `<radial>x<angular>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSize(pub PolarGrid);

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once('x').ok_or_else(|| format!("expected NxM, got {s:?}"))?;
        let n = |t: &str| t.parse::<usize>().map_err(|_| format!("invalid count {t:?}"));
        Ok(GridSize(PolarGrid {
            radial: n(a)?,
            angular: n(b)?,
        }))
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x}")
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse(_) => EXIT_IO,
        Error::Domain(_)
        | Error::NonConvergence { .. }
        | Error::Aliasing { .. }
        | Error::NotUnimodal { .. } => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_IO
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let (text, out, code) = match cmd {
        Command::Eval(a) => (cmd_eval(&a)?, a.output.out, EXIT_OK),
        Command::Kernel(a) => (cmd_kernel(&a)?, a.output.out, EXIT_OK),
        Command::Verify(a) => {
            let (text, failed) = cmd_verify(&a, stderr)?;
            (text, a.output.out, if failed { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Bounds(a) => (cmd_bounds(&a)?, a.output.out, EXIT_OK),
        Command::Landau(a) => (cmd_landau(&a)?, a.output.out, EXIT_OK),
        Command::Scan(a) => (cmd_scan(&a)?, a.output.out, EXIT_OK),
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn load_solution(input: &SolutionInput) -> Result<SeriesSolution> {
    match (&input.solution, &input.boundary) {
        (Some(path), None) => {
            let sol = SeriesSolution::from_json(&read_text(path)?)?;
            if let Some(a) = input.alpha {
                if a != sol.alpha().value() {
                    return domain(format!(
                        "--alpha {a} disagrees with the solution's alpha {}",
                        sol.alpha().value()
                    ));
                }
            }
            Ok(sol)
        }
        (None, Some(path)) => {
            let alpha = input
                .alpha
                .ok_or_else(|| Error::Parse("--boundary requires --alpha".into()))?;
            let alpha = Alpha::new(alpha)?;
            let data = BoundaryData::read_csv(read_text(path)?.as_bytes())?;
            let order = input
                .order
                .unwrap_or_else(|| DEFAULT_ORDER.min((data.len() - 1) / 4).max(1));
            SeriesSolution::from_boundary(alpha, &data, order)
        }
        _ => Err(Error::Parse("exactly one of --solution or --boundary is required".into())),
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn check_radii(r: &Grid) -> Result<()> {
    if let Some(bad) = r.0.iter().find(|&&x| !(0.0..1.0).contains(&x)) {
        return domain(format!("radius {bad} outside [0, 1)"));
    }
    Ok(())
}

fn cmd_eval(a: &EvalArgs) -> Result<String> {
    let sol = load_solution(&a.input)?;
    check_radii(&a.r)?;
    if a.angles == 0 {
        return domain("--angles must be positive");
    }
    let mut w = csv_writer();
    w.write_record(["r", "theta", "re", "im", "abs"]).map_err(csv_err)?;
    for &r in &a.r.0 {
        for j in 0..a.angles {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / a.angles as f64;
            let v = sol.evaluate(DiskPoint::from_polar(r, theta)?);
            w.write_record([r, theta, v.re, v.im, v.norm()].map(fmt_num)).map_err(csv_err)?;
        }
    }
    csv_finish(w)
}

fn cmd_kernel(a: &KernelArgs) -> Result<String> {
    let alpha = Alpha::new(a.alpha)?;
    check_radii(&a.r)?;
    let method = if a.fixed {
        MeanMethod::Quadrature(a.quad_n)
    } else {
        MeanMethod::Adaptive { start: a.quad_n }
    };
    let mut w = csv_writer();
    w.write_record(["r", "M_alpha_closed", "M_alpha_quad", "slope"]).map_err(csv_err)?;
    for &r in &a.r.0 {
        let row = [
            r,
            kernel_mean(alpha, r, MeanMethod::Closed)?,
            kernel_mean(alpha, r, method)?,
            kernel_mean_slope(alpha, r)?,
        ];
        w.write_record(row.map(fmt_num)).map_err(csv_err)?;
    }
    csv_finish(w)
}

fn seed() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn cmd_verify(a: &VerifyArgs, stderr: &mut dyn Write) -> Result<(String, bool)> {
    let sol = load_solution(&a.input)?;
    if !(a.tol > 0.0) {
        return domain("--tol must be positive");
    }
    let cfg = VerifyConfig {
        points: a.points,
        radius: a.radius,
        grid: a.grid.0,
        m: a.m,
        tol: a.tol,
        quad_n: a.quad_n,
        ..VerifyConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed()?);
    let outcome = verify_solution(&sol, &cfg, &mut rng)?;
    let mut text = String::new();
    for r in &outcome.reports {
        text.push_str(&r.to_json_line());
        text.push('\n');
    }
    let failed = outcome.violations().count();
    writeln!(
        stderr,
        "verify: {} checks, {failed} violated, M = {}",
        outcome.reports.len(),
        fmt_num(outcome.m)
    )?;
    Ok((text, failed > 0))
}

fn cmd_bounds(a: &BoundsArgs) -> Result<String> {
    let alpha = Alpha::new(a.alpha)?;
    check_radii(&a.r)?;
    let p: HardyExponent = a.p.parse()?;
    let heinz = heinz_boundary_bound(a.alpha).ok().map(fmt_num).unwrap_or_default();
    let mut w = csv_writer();
    w.write_record([
        "r",
        "center_deviation",
        "gradient_tight",
        "gradient_loose",
        "increment",
        "growth",
        "heinz_boundary",
    ])
    .map_err(csv_err)?;
    for &r in &a.r.0 {
        let z = DiskPoint::new(Complex64::new(r, 0.0))?;
        let mut row: Vec<String> = [
            r,
            center_deviation_bound(alpha, a.m, z)?,
            gradient_bound(alpha, a.m, r, true)?,
            gradient_bound(alpha, a.m, r, false)?,
            increment_bound(a.m, r)?,
            growth_bound(alpha, p.value(), a.norm, z)?,
        ]
        .map(fmt_num)
        .to_vec();
        row.push(heinz.clone());
        w.write_record(&row).map_err(csv_err)?;
    }
    csv_finish(w)
}

fn landau_json(r: &LandauResult) -> String {
    let mut s = serde_json::to_string(r).expect("result serializes");
    s.push('\n');
    s
}

fn cmd_landau(a: &LandauArgs) -> Result<String> {
    if a.beta_mode {
        let path = a.solution.as_ref().expect("clap enforces --solution");
        let sol = SeriesSolution::from_json(&read_text(path)?)?;
        let alpha = sol.alpha().value();
        if let Some(given) = a.alpha {
            if given != alpha {
                return domain(format!("--alpha {given} disagrees with the solution's alpha {alpha}"));
            }
        }
        let (beta, m) = measure_normalization(&sol, a.grid.0)?;
        let f0 = sol.evaluate(DiskPoint::origin()).norm();
        if f0 > 1e-12 * m.max(1.0) {
            return domain(format!("beta mode needs f(0) = 0, got |f(0)| = {f0}"));
        }
        if !(beta > 0.0) {
            return domain("beta mode needs |J_f(0)| > 0");
        }
        return Ok(landau_json(&landau_beta(alpha, beta, m)?));
    }
    let alpha = a
        .alpha
        .ok_or_else(|| Error::Parse("--alpha is required unless --beta-mode is given".into()))?;
    Ok(landau_json(&landau_hardy(alpha, a.p.parse()?, a.norm, a.lambda)?))
}

fn cmd_scan(a: &ScanArgs) -> Result<String> {
    let p: HardyExponent = a.p.parse()?;
    let mut w = csv_writer();
    let mut header = vec!["alpha", "p"];
    header.extend(LandauResult::CSV_HEADER);
    w.write_record(&header).map_err(csv_err)?;
    for &alpha in &a.alpha.0 {
        let r = landau_hardy(alpha, p, a.norm, a.lambda)?;
        let mut row = vec![fmt_num(alpha), fmt_num(p.value())];
        row.extend(r.csv_row().map(fmt_num));
        w.write_record(&row).map_err(csv_err)?;
    }
    csv_finish(w)
}
