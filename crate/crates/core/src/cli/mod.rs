//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failures, 2 argument errors,
//! 3 numeric-domain errors.

mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

pub use config::{config_to_args, expand_config};

use crate::closed_form::{catalog_entry, closed_sum, SeriesError, SeriesSpec};
use crate::oracle::{oracle_sum, EvalOutcome, Method, OracleError, TruncationPolicy};
use crate::verification::{reproduce_tables, verify_all, GridSpec, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

pub const PLOT_CSV_HEADER: &str = "x,closed_re,closed_im,oracle_re,oracle_im,abs_diff";

#[derive(Debug, Parser)]
#[command(
    name = "bessel-series",
    version,
    about = "Evaluate and cross-check lattice sums of integer-order Bessel functions",
    args_override_self = true
)]
pub struct Cli {
    /// TOML file of `flag = value` pairs applied before command-line flags
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one series at one point
    Eval(EvalArgs),
    /// Run the full verification suite
    Verify(VerifyArgs),
    /// Reproduce the simplified closed-form tables numerically
    Table(TableArgs),
    /// Sample closed form and oracle over an x range as CSV
    PlotData(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// Modulus N >= 1
    #[arg(long = "N", value_name = "N", allow_hyphen_values = true)]
    pub modulus: i64,
    /// Offset p
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub p: i64,
    /// Use the (-1)^v family
    #[arg(long)]
    pub alternating: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Oracle truncation tolerance
    #[arg(long)]
    pub tail_tol: Option<f64>,
    /// Oracle cap on |v|
    #[arg(long)]
    pub max_half_width: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Oracle,
    Catalog,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Argument: real number, or "re,im" for a complex value
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check moduli 1..=N-max
    #[arg(long = "N-max", default_value_t = 12)]
    pub n_max: u32,
    /// Override every tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Oracle-vs-closed tolerance on real points
    #[arg(long)]
    pub tol_real: Option<f64>,
    /// Oracle-vs-closed tolerance on complex points
    #[arg(long)]
    pub tol_complex: Option<f64>,
    /// Catalog-vs-closed tolerance
    #[arg(long)]
    pub tol_catalog: Option<f64>,
    /// Tolerance for the structural identities
    #[arg(long)]
    pub tol_structural: Option<f64>,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the JSON report here
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Sample points (repeat or comma-separate)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0])]
    pub x: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: f64,
    /// Number of intervals; steps + 1 points are written
    #[arg(long, default_value_t = 100)]
    pub steps: u32,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::InvalidPolicy(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// Parses `"re,im"` or a bare real number.
pub fn parse_x(text: &str) -> Result<Complex64, CliError> {
    let bad = |why: &str| CliError::Usage(format!("invalid --x {text:?}: {why}"));
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let z = match text.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(text)?, 0.0),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(bad("must be finite"));
    }
    Ok(z)
}

fn policy(args: &OracleArgs) -> Result<TruncationPolicy, CliError> {
    let d = TruncationPolicy::default();
    Ok(TruncationPolicy::new(
        args.tail_tol.unwrap_or(d.tail_tol()),
        args.max_half_width.unwrap_or(d.max_half_width()),
    )?)
}

fn series(args: &SeriesArgs) -> Result<SeriesSpec, CliError> {
    Ok(SeriesSpec::new(args.modulus, args.p, args.alternating)?)
}

fn finite(v: Complex64, what: &str) -> Result<Complex64, CliError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Domain(format!(
            "{what} is not finite at this argument"
        )))
    }
}

fn closed_outcome(spec: &SeriesSpec, x: Complex64) -> Result<EvalOutcome, CliError> {
    Ok(EvalOutcome {
        value: finite(closed_sum(spec, x), "closed form")?,
        est_tail: 0.0,
        terms_used: spec.modulus() as u64,
        method: if spec.is_alternating() {
            Method::Theorem2
        } else {
            Method::Theorem1
        },
    })
}

fn catalog_outcome(
    spec: &SeriesSpec,
    x: Complex64,
) -> Result<(EvalOutcome, &'static str), CliError> {
    let (entry, sign) = catalog_entry(spec)?;
    let out = EvalOutcome {
        value: finite(entry.eval(x) * sign, "catalog form")?,
        est_tail: 0.0,
        terms_used: 1,
        method: Method::Catalog,
    };
    Ok((out, entry.display))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Oracle => "oracle",
        Method::Theorem1 => "theorem1",
        Method::Theorem2 => "theorem2",
        Method::Catalog => "catalog",
    }
}

#[derive(Serialize)]
struct PairDiff {
    a: &'static str,
    b: &'static str,
    abs_diff: f64,
}

#[derive(Serialize)]
struct EvalDocument {
    #[serde(rename = "N")]
    modulus: u32,
    p: i64,
    alternating: bool,
    x_re: f64,
    x_im: f64,
    outcomes: Vec<EvalOutcome>,
    diffs: Vec<PairDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog_formula: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

fn cmd_eval(args: &EvalArgs) -> Result<String, CliError> {
    let spec = series(&args.series)?;
    let x = parse_x(&args.x)?;
    let policy = policy(&args.oracle)?;

    let mut outcomes = Vec::new();
    let mut formula = None;
    let mut notes = Vec::new();
    let want = |m: MethodArg| args.method == m || args.method == MethodArg::All;

    if want(MethodArg::Closed) {
        outcomes.push(closed_outcome(&spec, x)?);
    }
    if want(MethodArg::Oracle) {
        outcomes.push(oracle_sum(&spec, x, &policy)?);
    }
    if want(MethodArg::Catalog) {
        match catalog_outcome(&spec, x) {
            Ok((o, f)) => {
                outcomes.push(o);
                formula = Some(f);
            }
            Err(e) if args.method == MethodArg::All => {
                notes.push(format!("catalog skipped: {}", e.message()))
            }
            Err(e) => return Err(e),
        }
    }

    let mut diffs = Vec::new();
    for (i, a) in outcomes.iter().enumerate() {
        for b in &outcomes[i + 1..] {
            diffs.push(PairDiff {
                a: method_name(a.method),
                b: method_name(b.method),
                abs_diff: (a.value - b.value).norm(),
            });
        }
    }

    let doc = EvalDocument {
        modulus: spec.modulus(),
        p: spec.offset(),
        alternating: spec.is_alternating(),
        x_re: x.re,
        x_im: x.im,
        outcomes,
        diffs,
        catalog_formula: formula,
        notes,
    };
    Ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("eval serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("method,value_re,value_im,est_tail,terms_used\n");
            for o in &doc.outcomes {
                let _ = writeln!(
                    out,
                    "{},{},{},{:e},{}",
                    method_name(o.method),
                    o.value.re,
                    o.value.im,
                    o.est_tail,
                    o.terms_used
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{spec}  at x = {}{:+}i", x.re, x.im);
            for o in &doc.outcomes {
                let _ = write!(
                    out,
                    "{:<9} {:+.17e} {:+.17e}i",
                    method_name(o.method),
                    o.value.re,
                    o.value.im
                );
                if o.method == Method::Oracle {
                    let _ = write!(out, "  est_tail={:.3e} terms={}", o.est_tail, o.terms_used);
                }
                if o.method == Method::Catalog {
                    let _ = write!(out, "  {}", doc.catalog_formula.unwrap_or(""));
                }
                out.push('\n');
            }
            for d in &doc.diffs {
                let _ = writeln!(out, "|{} - {}| = {:.3e}", d.a, d.b, d.abs_diff);
            }
            for n in &doc.notes {
                let _ = writeln!(out, "note: {n}");
            }
            out
        }
    })
}

fn tolerances(args: &VerifyArgs) -> Tolerances {
    let mut t = args.tol.map(Tolerances::uniform).unwrap_or_default();
    if let Some(v) = args.tol_real {
        t.theorem_real = v;
        t.jacobi_anger_real = v;
    }
    if let Some(v) = args.tol_complex {
        t.theorem_complex = v;
        t.jacobi_anger_complex = v;
    }
    if let Some(v) = args.tol_catalog {
        t.catalog = v;
        t.intro_formula = v;
    }
    if let Some(v) = args.tol_structural {
        t.set_structural(v);
    }
    t
}

/// Returns the rendered report, the summary line and whether everything passed.
fn cmd_verify(args: &VerifyArgs) -> Result<(String, String, bool), CliError> {
    if args.n_max == 0 {
        return Err(CliError::Usage("--N-max must be at least 1".into()));
    }
    let grid = GridSpec::default()
        .with_policy(policy(&args.oracle)?)
        .with_moduli((1..=args.n_max).collect())
        .and_then(|g| g.with_tolerances(tolerances(args)))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = verify_all(&grid);
    if let Some(path) = &args.output {
        fs::write(path, report.to_json() + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let body = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    Ok((body, report.summary_line(), report.all_passed()))
}

fn cmd_table(args: &TableArgs) -> Result<String, CliError> {
    if args.x.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage("--x samples must be finite".into()));
    }
    let doc = reproduce_tables(&args.x).map_err(|e| CliError::Usage(e.to_string()))?;
    match args.format {
        Format::Json => Ok(doc.to_json() + "\n"),
        Format::Text => Ok(doc.to_text()),
        Format::Csv => Err(CliError::Usage(
            "table supports --format text or json".into(),
        )),
    }
}

/// `steps + 1` evenly spaced samples over `[x_min, x_max]`.
fn cmd_plot_data(args: &PlotArgs) -> Result<String, CliError> {
    let spec = series(&args.series)?;
    let policy = policy(&args.oracle)?;
    if !args.x_min.is_finite() || !args.x_max.is_finite() || args.x_max <= args.x_min {
        return Err(CliError::Usage("need finite --x-min < --x-max".into()));
    }
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let mut out = String::from(PLOT_CSV_HEADER);
    out.push('\n');
    let width = args.x_max - args.x_min;
    for i in 0..=args.steps {
        let x = if i == args.steps {
            args.x_max
        } else {
            args.x_min + width * (i as f64) / (args.steps as f64)
        };
        let z = Complex64::new(x, 0.0);
        let closed = closed_sum(&spec, z);
        let oracle = oracle_sum(&spec, z, &policy)?.value;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:e}",
            x,
            closed.re,
            closed.im,
            oracle.re,
            oracle.im,
            (closed - oracle).norm()
        );
    }
    Ok(out)
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };

    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a)
            .and_then(|s| emit(&s, a.output.as_ref(), out))
            .map(|_| EXIT_OK),
        Command::Table(a) => cmd_table(a)
            .and_then(|s| emit(&s, a.output.as_ref(), out))
            .map(|_| EXIT_OK),
        Command::PlotData(a) => cmd_plot_data(a)
            .and_then(|s| emit(&s, a.output.as_ref(), out))
            .map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(a).and_then(|(body, line, ok)| {
            emit(&body, None, out)?;
            // JSON and CSV bodies stay machine-readable
            if a.format != Format::Text {
                let _ = writeln!(err, "{line}");
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
