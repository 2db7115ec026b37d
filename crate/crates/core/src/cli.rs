//! Command-line front end: coefficient tables, identity verification and
//! series dumps. Exit codes: 0 success, 1 identity failure, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::{
    bell_poly, deg_exp_series, deg_log_series, polyexp_apply, stirling_table, BellVariant, StirlingKind,
};
use crate::error::Error;
use crate::identities::{self, GridOverrides, IdentityReport};
use crate::poly::Polynomial;
use crate::polybell::{bel_all, Route};
use crate::probabilistic::{deg_mgf_closed, deg_mgf_series, prob_deg_bell_all, prob_deg_stirling2_table, Distribution};
use crate::rational::{format_short, parse_rational, Rational};
use crate::series::Series;

pub const OUTPUT_ENV: &str = "POLYBELL_OUTPUT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "polybell", version, about = "Exact tables and identity checks for degenerate poly-Bell polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient table, one row per n = 0..=n_max.
    Table(TableArgs),
    /// Check catalog identities and stream one JSON report per line.
    Verify(VerifyArgs),
    /// EGF coefficients n! [t^n] of a generating function.
    Series(SeriesArgs),
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output. POLYBELL_OUTPUT takes precedence.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Stirling1,
    Stirling2,
    DegStirling1,
    DegStirling2,
    Lah,
    Bell,
    DegBell,
    ProbDegStirling2,
    ProbDegBell,
    Polybell,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BelRoute {
    Closed,
    Gf,
    Sm,
}

impl From<BelRoute> for Route {
    fn from(r: BelRoute) -> Route {
        match r {
            BelRoute::Closed => Route::Closed,
            BelRoute::Gf => Route::GeneratingFunction,
            BelRoute::Sm => Route::MomentSums,
        }
    }
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, value_parser = dist_arg)]
    pub dist: Option<Distribution>,
    /// Construction used for the polybell family.
    #[arg(long, value_enum, default_value_t = BelRoute::Gf)]
    pub route: BelRoute,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Catalog id, or "all".
    #[arg(long)]
    pub id: String,
    /// Grid overrides such as "n<=6;l<=10;lambda=0,1/3".
    #[arg(long, conflicts_with = "seed_grid", allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Use the built-in acceptance grid unchanged.
    #[arg(long)]
    pub seed_grid: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    DegExp,
    DegLog,
    DegMgf,
    Polyexp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MgfRoute {
    Generic,
    Closed,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub name: SeriesName,
    #[arg(long)]
    pub order: usize,
    /// A rational, or "x" for the symbolic variable.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, value_parser = dist_arg)]
    pub dist: Option<Distribution>,
    #[arg(long, value_enum, default_value_t = MgfRoute::Generic)]
    pub route: MgfRoute,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn dist_arg(s: &str) -> Result<Distribution, String> {
    s.parse::<Distribution>().map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn require<T: Clone>(value: &Option<T>, flag: &str, what: &str) -> Result<T, Failure> {
    value
        .clone()
        .ok_or_else(|| Failure::Usage(format!("missing required parameter --{flag} for {what}")))
}

fn reject<T>(value: &Option<T>, flag: &str, what: &str) -> Result<(), Failure> {
    match value {
        Some(_) => Err(Failure::Usage(format!("parameter --{flag} does not apply to {what}"))),
        None => Ok(()),
    }
}

type ParamMap = BTreeMap<&'static str, String>;

#[derive(Serialize)]
struct Row {
    n: usize,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    family: &'a str,
    params: &'a ParamMap,
    rows: &'a [Row],
}

#[derive(Serialize)]
#[serde(untagged)]
enum Coeff {
    Scalar(String),
    Poly(Vec<String>),
}

#[derive(Serialize)]
struct SeriesDoc<'a> {
    series: &'a str,
    params: &'a ParamMap,
    egf: Vec<Coeff>,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn padded_row(n: usize, values: impl IntoIterator<Item = Rational>) -> Row {
    let mut coeffs: Vec<String> = values.into_iter().map(|v| format_short(&v)).collect();
    coeffs.resize(n + 1, "0".to_string());
    Row { n, coeffs }
}

fn poly_row(n: usize, p: &Polynomial) -> Row {
    padded_row(n, p.coeffs().iter().cloned())
}

fn csv_rows(rows: impl IntoIterator<Item = (usize, Vec<String>)>, width: usize) -> Result<String, Failure> {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    let header = std::iter::once("n".to_string()).chain((0..width).map(|i| format!("c{i}")));
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for (n, mut cells) in rows {
        cells.resize(width, "0".to_string());
        w.write_record(std::iter::once(n.to_string()).chain(cells)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 input"))
}

fn run_table(a: &TableArgs) -> Result<String, Failure> {
    let family = value_name(&a.family);
    let what = format!("family {family}");
    let n_max = a.n_max;
    let mut params = ParamMap::new();
    params.insert("n_max", n_max.to_string());
    let uses_lambda = !matches!(a.family, Family::Stirling1 | Family::Stirling2 | Family::Lah | Family::Bell);
    let uses_dist = matches!(a.family, Family::ProbDegStirling2 | Family::ProbDegBell | Family::Polybell);
    let uses_k = a.family == Family::Polybell;
    let lambda = if uses_lambda {
        let l = require(&a.lambda, "lambda", &what)?;
        params.insert("lambda", format_short(&l));
        l
    } else {
        reject(&a.lambda, "lambda", &what)?;
        Rational::default()
    };
    let dist = if uses_dist {
        let d = require(&a.dist, "dist", &what)?;
        params.insert("dist", d.to_string());
        Some(d)
    } else {
        reject(&a.dist, "dist", &what)?;
        None
    };
    let k = if uses_k {
        let k = require(&a.k, "k", &what)?;
        params.insert("k", k.to_string());
        params.insert("route", value_name(&a.route));
        k
    } else {
        reject(&a.k, "k", &what)?;
        0
    };

    let triangle_rows = |kind: StirlingKind| {
        let t = stirling_table(kind, &lambda, n_max);
        (0..=n_max).map(|n| padded_row(n, (0..=n).map(|j| t.get(n, j)))).collect::<Vec<_>>()
    };
    let poly_rows = |polys: &[Polynomial]| polys.iter().enumerate().map(|(n, p)| poly_row(n, p)).collect::<Vec<_>>();
    let rows = match a.family {
        Family::Stirling1 => triangle_rows(StirlingKind::Classical1),
        Family::Stirling2 => triangle_rows(StirlingKind::Classical2),
        Family::DegStirling1 => triangle_rows(StirlingKind::Degenerate1),
        Family::DegStirling2 => triangle_rows(StirlingKind::Degenerate2),
        Family::Lah => triangle_rows(StirlingKind::Lah),
        Family::Bell => (0..=n_max).map(|n| poly_row(n, &bell_poly(n, &BellVariant::Classical))).collect(),
        Family::DegBell => (0..=n_max)
            .map(|n| poly_row(n, &bell_poly(n, &BellVariant::Degenerate(lambda.clone()))))
            .collect(),
        Family::ProbDegStirling2 => {
            let t = prob_deg_stirling2_table(dist.as_ref().expect("required above"), &lambda, n_max);
            (0..=n_max).map(|n| padded_row(n, (0..=n).map(|j| t.get(n, j)))).collect()
        }
        Family::ProbDegBell => poly_rows(&prob_deg_bell_all(dist.as_ref().expect("required above"), &lambda, n_max)),
        Family::Polybell => poly_rows(&bel_all(a.route.into(), dist.as_ref().expect("required above"), &lambda, k, n_max)),
    };

    match a.out.format {
        Format::Json => {
            let doc = TableDoc {
                family: &family,
                params: &params,
                rows: &rows,
            };
            Ok(serde_json::to_string(&doc).expect("serializable") + "\n")
        }
        Format::Csv => csv_rows(rows.into_iter().map(|r| (r.n, r.coeffs)), n_max + 1),
    }
}

fn run_verify(a: &VerifyArgs) -> Result<(String, bool), Failure> {
    let overrides = match &a.grid {
        Some(g) => g.parse::<GridOverrides>()?,
        None => GridOverrides::default(),
    };
    let reports: Vec<IdentityReport> = if a.id == "all" {
        identities::run_all(&overrides)?
    } else {
        vec![identities::verify_identity(&a.id, &overrides)?]
    };
    let all_passed = reports.iter().all(|r| r.passed);
    let text = match a.out.format {
        Format::Json => reports.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .quote_style(csv::QuoteStyle::NonNumeric)
                .from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Io(e.to_string());
            w.write_record(["id", "passed", "grid_size", "failure_count"]).map_err(io)?;
            for r in &reports {
                w.write_record([r.id.clone(), r.passed.to_string(), r.grid_size.to_string(), r.failures.len().to_string()])
                    .map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.to_string()))?).expect("utf-8")
        }
    };
    Ok((text, all_passed))
}

fn run_series(a: &SeriesArgs) -> Result<String, Failure> {
    let name = value_name(&a.name);
    let what = format!("series {name}");
    let order = a.order;
    let mut params = ParamMap::new();
    params.insert("order", order.to_string());
    let lambda = require(&a.lambda, "lambda", &what)?;
    params.insert("lambda", format_short(&lambda));
    if a.name != SeriesName::DegExp {
        reject(&a.x, "x", &what)?;
    }
    if a.name != SeriesName::DegMgf {
        reject(&a.dist, "dist", &what)?;
    }
    if a.name != SeriesName::Polyexp {
        reject(&a.k, "k", &what)?;
    }
    let mut symbolic = false;
    let series: Series = match a.name {
        SeriesName::DegExp => {
            let x = require(&a.x, "x", &what)?;
            let x_poly = if x.trim() == "x" {
                symbolic = true;
                Polynomial::x()
            } else {
                Polynomial::constant(parse_rational(&x).map_err(|e| Failure::Usage(format!("invalid --x: {e}")))?)
            };
            params.insert("x", x.trim().to_string());
            deg_exp_series(&x_poly, &lambda, order)
        }
        SeriesName::DegLog => deg_log_series(&lambda, order),
        SeriesName::DegMgf => {
            let dist = require(&a.dist, "dist", &what)?;
            params.insert("dist", dist.to_string());
            params.insert("route", value_name(&a.route));
            match a.route {
                MgfRoute::Generic => deg_mgf_series(&dist, &lambda, order),
                MgfRoute::Closed => deg_mgf_closed(&dist, &lambda, order)
                    .ok_or_else(|| Failure::Usage(format!("no closed form for --dist {dist}")))?,
            }
        }
        SeriesName::Polyexp => {
            let k = require(&a.k, "k", &what)?;
            params.insert("k", k.to_string());
            polyexp_apply(k, &lambda, &Series::t(order))?
        }
    };
    let egf = series.egf_coeffs();
    match a.out.format {
        Format::Json => {
            let egf = egf
                .iter()
                .map(|p| {
                    if symbolic {
                        Coeff::Poly(p.coeffs().iter().map(format_short).collect())
                    } else {
                        Coeff::Scalar(format_short(&p.constant_term()))
                    }
                })
                .collect();
            let doc = SeriesDoc {
                series: &name,
                params: &params,
                egf,
            };
            Ok(serde_json::to_string(&doc).expect("serializable") + "\n")
        }
        Format::Csv => {
            let width = egf.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(1);
            let rows = egf.iter().enumerate().map(|(n, p)| (n, p.coeffs().iter().map(format_short).collect()));
            csv_rows(rows, width)
        }
    }
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `env_output` plays the role of `POLYBELL_OUTPUT`.
pub fn run_with<I, T>(args: I, env_output: Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (result, out) = match &cli.command {
        Command::Table(a) => (run_table(a).map(|t| (t, true)), &a.out),
        Command::Verify(a) => (run_verify(a), &a.out),
        Command::Series(a) => (run_series(a).map(|t| (t, true)), &a.out),
    };
    let path = env_output.or_else(|| out.output.clone());
    let outcome = result.and_then(|(text, passed)| emit(&text, path.as_deref(), stdout).map(|_| passed));
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Usage(msg) | Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

pub fn run() -> i32 {
    let env_output = std::env::var_os(OUTPUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    run_with(std::env::args_os(), env_output, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
