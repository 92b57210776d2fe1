//! The `stripfol` command line.
//!
//! Verdicts and reports go to stdout as JSON; diagnostics go to stderr.
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 invalid
//! input, 3 I/O or internal failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::dsl::{parse_surface, parse_unvalidated, serialize_surface, LoadError};
use crate::error::Error;
use crate::homeo::{check_identity_component, FHomeoShadow};
use crate::leaves::{classify_leaves, leaves_json, LeafMembers};
use crate::model::{validate_surface, StrippedSurface};
use crate::numeric::{emit_csv, emit_svg, sample_map, GridSpec, LambdaFamily, MapSpec, NumericError, PlMonotoneMap};
use crate::reduction::{orientable, reduce};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stripfol", version, about = "Stripped surfaces and their canonical foliations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a surface file and print its diagnostics.
    Validate { path: PathBuf },
    /// Classify the leaves of the canonical foliation.
    Leaves {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reduce every component to normal form.
    Reduce {
        path: PathBuf,
        /// Also write the outcome to this file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Decide whether a shadow lies in the identity component.
    #[command(name = "check-h0")]
    CheckH0 { surface: PathBuf, shadow: PathBuf },
    /// Decide orientability of a connected surface.
    Orientable { path: PathBuf },
    /// Print the canonical form of a surface file.
    Fmt { path: PathBuf },
    /// Sample one of the explicit plane maps on a grid.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Raw,
    Banded,
    Chain,
    Contraction,
    Qdef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Svg,
}

#[derive(Debug, clap::Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub map: MapKind,
    /// Sample counts as `NXxNY`.
    #[arg(long, default_value = "11x11", value_parser = parse_grid)]
    pub grid: (usize, usize),
    #[arg(long, default_value = "-10..10", allow_hyphen_values = true, value_parser = parse_range)]
    pub xrange: (f64, f64),
    #[arg(long, default_value = "-0.999..0.999", allow_hyphen_values = true, value_parser = parse_range)]
    pub yrange: (f64, f64),
    /// Time parameter of the isotopies.
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// JSON file with `lambda`: a list of `[x, lambda(x)]` pairs, or
    /// `{"levels": [{"y": .., "map": [[x, lambda(x, y)], ..]}, ..]}`.
    #[arg(long, value_name = "FILE")]
    pub lambda: Option<PathBuf>,
    /// JSON file with `mu` as a list of `[y, mu(y)]` pairs.
    #[arg(long, value_name = "FILE")]
    pub mu: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    pub out: OutFormat,
    /// Write here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NXxNY, got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad grid size `{t}`: {e}"));
    Ok((n(a)?, n(b)?))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let s = s.replace('\u{2212}', "-");
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad bound `{t}`: {e}"));
    let (lo, hi) = (n(a)?, n(b)?);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("empty or non-finite range `{s}`"));
    }
    Ok((lo, hi))
}

// Dispatched by hand: untagged enums cannot see through arbitrary-precision numbers.
#[derive(Deserialize)]
struct LambdaLevels {
    levels: Vec<LambdaLevel>,
}

#[derive(Deserialize)]
struct LambdaLevel {
    y: f64,
    map: Vec<(f64, f64)>,
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_INTERNAL, message: format!("error[IO]: {}: {e}", path.display()) }
    }

    fn invalid(tag: &str, message: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_INVALID, message: format!("error[{tag}]: {message}") }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::invalid(e.code(), e)
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        Failure::invalid(e.code(), e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn load(path: &Path) -> Result<StrippedSurface, Failure> {
    parse_surface(&read(path)?).map_err(|e| match e {
        LoadError::Parse(errs) => Failure::invalid(errs[0].code.as_str(), format!("{}:{}", path.display(), LoadError::Parse(errs))),
        LoadError::Invalid(d) => Error::InvalidSurface(d).into(),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Output of a successful command.
struct Report {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

fn cmd_validate(path: &Path) -> Result<Report, Failure> {
    let text = read(path)?;
    match parse_unvalidated(&text) {
        Err(errs) => {
            let v = json!({ "ok": false, "issues": [], "parse_errors": errs.iter().map(|e| e.to_json()).collect::<Vec<_>>() });
            let stderr = errs.iter().map(|e| format!("{}:{e}\n", path.display())).collect();
            Ok(Report { code: EXIT_INVALID, stdout: pretty(&v), stderr })
        }
        Ok(s) => {
            let d = validate_surface(&s);
            let stderr = d.issues.iter().map(|i| format!("{}: {} {}: {}\n", path.display(), i.code.as_str(), i.reference, i.message)).collect();
            let code = if d.ok() { EXIT_OK } else { EXIT_INVALID };
            Ok(Report { code, stdout: pretty(&serde_json::to_value(&d).expect("diagnostics serialize")), stderr })
        }
    }
}

fn cmd_leaves(path: &Path, as_json: bool) -> Result<Report, Failure> {
    let records = classify_leaves(&load(path)?)?;
    if as_json {
        return Ok(Report::ok(pretty(&leaves_json(&records))));
    }
    let mut out = String::new();
    for r in &records {
        let members = match &r.members {
            LeafMembers::Strip(s) => s.to_string(),
            LeafMembers::Interval(i) => i.to_string(),
            LeafMembers::Pair { src, dst } => format!("{src} {dst}"),
        };
        out.push_str(&format!("{}\t{}\t{}\n", r.leaf_id, r.kind, members));
    }
    Ok(Report::ok(out))
}

fn cmd_reduce(path: &Path, emit: Option<&Path>) -> Result<Report, Failure> {
    let outcome = reduce(&load(path)?)?;
    let text = pretty(&outcome.to_json());
    if let Some(p) = emit {
        write_file(p, &text)?;
    }
    Ok(Report::ok(text))
}

fn cmd_check_h0(surface: &Path, shadow: &Path) -> Result<Report, Failure> {
    let s = load(surface)?;
    let sh = FHomeoShadow::from_json(&read(shadow)?).map_err(|e| Failure::invalid("INVALID_SHADOW", format!("{}: {e}", shadow.display())))?;
    let v = check_identity_component(&s, &sh)?;
    let stderr = v.failures.iter().map(|f| format!("condition {} fails at {}\n", f.condition, f.witness)).collect();
    Ok(Report { code: if v.in_h0() { EXIT_OK } else { EXIT_FALSE }, stdout: pretty(&v.to_json()), stderr })
}

fn cmd_orientable(path: &Path) -> Result<Report, Failure> {
    let o = orientable(&load(path)?)?;
    Ok(Report { code: if o { EXIT_OK } else { EXIT_FALSE }, stdout: pretty(&json!({ "orientable": o })), stderr: String::new() })
}

fn cmd_fmt(path: &Path) -> Result<Report, Failure> {
    Ok(Report::ok(serialize_surface(&load(path)?)))
}

fn read_lambda(path: Option<&Path>) -> Result<LambdaFamily, Failure> {
    let Some(path) = path else { return Ok(LambdaFamily::identity()) };
    let bad = |e: serde_json::Error| Failure::invalid("BAD_MAP", format!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&read(path)?).map_err(bad)?;
    Ok(if v.is_array() {
        let pts: Vec<(f64, f64)> = serde_json::from_value(v).map_err(bad)?;
        LambdaFamily::constant(PlMonotoneMap::new(pts)?)?
    } else {
        let LambdaLevels { levels } = serde_json::from_value(v).map_err(bad)?;
        let rows = levels.into_iter().map(|l| Ok((l.y, PlMonotoneMap::new(l.map)?))).collect::<Result<Vec<_>, NumericError>>()?;
        LambdaFamily::new(rows)?
    })
}

fn read_mu(path: Option<&Path>) -> Result<PlMonotoneMap, Failure> {
    let Some(path) = path else { return Ok(PlMonotoneMap::identity()) };
    let pts: Vec<(f64, f64)> = serde_json::from_str(&read(path)?).map_err(|e| Failure::invalid("BAD_MAP", format!("{}: {e}", path.display())))?;
    Ok(PlMonotoneMap::new(pts)?)
}

fn cmd_eval(args: &EvalArgs) -> Result<Report, Failure> {
    let map = match args.map {
        MapKind::Raw => MapSpec::Raw,
        MapKind::Banded => MapSpec::Banded,
        MapKind::Chain => MapSpec::Chain,
        MapKind::Contraction => MapSpec::Contraction { lambda: read_lambda(args.lambda.as_deref())?, t: args.t },
        MapKind::Qdef => MapSpec::QDeformation {
            lambda: read_lambda(args.lambda.as_deref())?,
            mu: read_mu(args.mu.as_deref())?,
            t: args.t,
        },
    };
    let spec = GridSpec { x_range: args.xrange, y_range: args.yrange, nx: args.grid.0, ny: args.grid.1 };
    let grid = sample_map(&map, spec)?;
    let text = match args.out {
        OutFormat::Csv => emit_csv(&grid),
        OutFormat::Svg => emit_svg(&grid),
    };
    match &args.output {
        Some(p) => {
            write_file(p, &text)?;
            Ok(Report::ok(String::new()))
        }
        None => Ok(Report::ok(text)),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Leaves { path, json } => cmd_leaves(path, *json),
        Command::Reduce { path, emit } => cmd_reduce(path, emit.as_deref()),
        Command::CheckH0 { surface, shadow } => cmd_check_h0(surface, shadow),
        Command::Orientable { path } => cmd_orientable(path),
        Command::Fmt { path } => cmd_fmt(path),
        Command::Eval(args) => cmd_eval(args),
    }
}

/// Runs the command line given by `args` (program name first) and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (code, out, err) = match dispatch(&cli) {
        Ok(r) => (r.code, r.stdout, r.stderr),
        Err(f) => (f.code, String::new(), f.message + "\n"),
    };
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return EXIT_INTERNAL;
    }
    let _ = stderr.write_all(err.as_bytes());
    code
}
