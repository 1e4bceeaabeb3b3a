use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cf_errsum::catalog::{self, CatalogEntry};
use cf_errsum::cf::{error_term, expected_sign, CfPattern, ErrorMode, ErrorValue};
use cf_errsum::error_series::{flat_abs_error, Prefactor};
use cf_errsum::identities::numeric::numeric_partial_sums;
use cf_errsum::identities::{e2s, linear_exp, tanh, IdentityReport};
use cf_errsum::series::series_exp;
use cf_errsum::{Error, Family, LaurentSeries, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cf-errsum", version, about = "Exact continued-fraction error sums and the identities they imply")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify catalog identities over a range of instances.
    Verify {
        /// Identity ids; `all` selects the whole catalog.
        #[arg(required = true)]
        ids: Vec<String>,
        /// Inclusive range `lo..hi` (or a single instance); defaults to each identity's own range.
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print a Laurent series in t = 1/s as JSON.
    Expand {
        #[arg(value_enum)]
        quantity: Quantity,
        #[arg(long)]
        order: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate |E_n| for n = 0..=N, as series or as enclosures.
    Errors {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Last index N.
        #[arg(long = "n")]
        last: u64,
        /// Truncation order for symbolic rows.
        #[arg(long, default_value_t = 10)]
        order: i64,
        /// Enclosure width 10^-digits for numeric rows.
        #[arg(long, default_value_t = 40)]
        digits: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Residuals of the weighted partial sums for a numeric pattern.
    PartialSums {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long = "N", alias = "last")]
        last: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        power: u8,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the whole catalog over its default ranges and write a summary.
    Report {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PatternArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Keep s as a variable.
    #[arg(long)]
    symbolic: bool,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    u: Option<u64>,
    #[arg(long)]
    v: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    ExpInvS,
    ExpTwoInvS,
    TanhUv,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::ExpInvS => Family::ExpInvS,
            FamilyArg::ExpTwoInvS => Family::ExpTwoInvS,
            FamilyArg::TanhUv => Family::TanhUV,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    AlphaExp,
    AlphaE2s,
    LinearSumExp,
    LinearSumE2s,
    PhiSum,
    QuadTarget,
}

/// How a subcommand ended, mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<bool, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_range(text: &str) -> Result<RangeInclusive<u64>, Failure> {
    let bad = || usage(format!("invalid range {text:?}; expected lo..hi"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (text, text),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(usage(format!("invalid range {text:?}: lo > hi")));
    }
    Ok(lo..=hi)
}

/// `10^-digits` as an exact rational.
fn eps_from_digits(digits: u32) -> Result<Rational, Failure> {
    if digits == 0 {
        return Err(usage("digits must be positive"));
    }
    format!("1/1{}", "0".repeat(digits as usize)).parse().map_err(usage)
}

fn write_reports(out: &mut dyn Write, format: Format, reports: &[IdentityReport]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(r).expect("report serializes"))?;
            }
        }
        Format::Csv => {
            writeln!(out, "id,instance,lhs,rhs,pass,terms")?;
            for r in reports {
                writeln!(
                    out,
                    "{},{},\"{}\",\"{}\",{},{}",
                    r.identity_id, r.instance, r.lhs, r.rhs, r.pass, r.terms_evaluated
                )?;
            }
        }
        Format::Pretty => {
            for r in reports {
                writeln!(
                    out,
                    "{} {:<20} k={:<4} lhs={} rhs={} ({} terms)",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.identity_id,
                    r.instance,
                    r.lhs,
                    r.rhs,
                    r.terms_evaluated
                )?;
            }
        }
    }
    Ok(())
}

fn resolve_ids(ids: &[String]) -> Result<Vec<&'static CatalogEntry>, Failure> {
    if ids.iter().any(|i| i == "all") {
        return Ok(catalog::catalog().iter().collect());
    }
    ids.iter()
        .map(|id| {
            catalog::lookup(id).ok_or_else(|| {
                let known: Vec<_> = catalog::catalog().iter().map(|e| e.id).collect();
                usage(format!("unknown identity {id:?}; known ids: {}", known.join(", ")))
            })
        })
        .collect()
}

fn cmd_verify(ids: &[String], range: Option<&str>, out: &OutputArgs) -> CmdResult {
    let entries = resolve_ids(ids)?;
    let range = range.map(parse_range).transpose()?;
    let threads = catalog::thread_cap_from_env().map_err(usage)?;
    let mut all = Vec::new();
    for e in entries {
        let r = range.clone().unwrap_or_else(|| e.default_range.clone());
        all.extend(catalog::run_range(e, r, threads).map_err(usage)?);
    }
    let mut w = open_output(&out.output)?;
    write_reports(&mut *w, out.format, &all)?;
    w.flush()?;
    Ok(all.iter().all(|r| r.pass))
}

fn cmd_expand(quantity: Quantity, order: i64, output: &Option<PathBuf>) -> CmdResult {
    if order < 0 {
        return Err(usage("order must be non-negative"));
    }
    let series: LaurentSeries = match quantity {
        Quantity::AlphaExp => series_exp(&Rational::one(), order),
        Quantity::AlphaE2s => series_exp(&Rational::from(2), order),
        Quantity::LinearSumExp => linear_exp::assemble_linear_sum_exp(order).assembled,
        Quantity::LinearSumE2s => e2s::assemble_linear_sum_e2s(order).assembled,
        Quantity::PhiSum => tanh::assemble_phi_sum(order).assembled,
        Quantity::QuadTarget => tanh::quad_target(order),
    };
    let mut w = open_output(output)?;
    writeln!(w, "{}", serde_json::to_string(&series).expect("series serializes"))?;
    w.flush()?;
    Ok(true)
}

fn build_pattern(p: &PatternArgs) -> Result<CfPattern, Failure> {
    let family = Family::from(p.family);
    if p.symbolic {
        return CfPattern::symbolic(family).map_err(usage);
    }
    let need = |x: Option<u64>, name: &str| x.ok_or_else(|| usage(format!("--{name} is required for {family}")));
    match family {
        Family::ExpInvS => CfPattern::exp_inv_s(need(p.s, "s")?),
        Family::ExpTwoInvS => CfPattern::exp_two_inv_s(need(p.s, "s")?),
        Family::TanhUV => CfPattern::tanh_uv(need(p.u, "u")?, need(p.v, "v")?),
    }
    .map_err(usage)
}

#[derive(Serialize)]
struct SeriesRow<'a> {
    n: u64,
    sign: i8,
    abs: &'a LaurentSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    prefactor: Option<Prefactor>,
}

#[derive(Serialize)]
struct IntervalRow<'a> {
    n: u64,
    sign: i8,
    lo: &'a Rational,
    hi: &'a Rational,
}

fn cmd_errors(p: &PatternArgs, last: u64, order: i64, digits: u32, out: &OutputArgs) -> CmdResult {
    // the tanh family has closed-form series but no symbolic alpha
    let tanh_series = p.symbolic && Family::from(p.family) == Family::TanhUV;
    let pattern = if tanh_series { None } else { Some(build_pattern(p)?) };
    let mode = if p.symbolic {
        if order < 0 {
            return Err(usage("order must be non-negative"));
        }
        ErrorMode::Symbolic { order }
    } else {
        ErrorMode::Numeric { eps: eps_from_digits(digits)? }
    };
    let mut w = open_output(&out.output)?;
    if out.format == Format::Csv {
        if p.symbolic {
            writeln!(w, "n,exponent,coeff")?;
        } else {
            writeln!(w, "n,sign,lo,hi")?;
        }
    }
    for n in 0..=last {
        let (sign, value, prefactor) = match &pattern {
            None if n == 0 => continue,
            None => {
                let g = flat_abs_error(Family::TanhUV, n, order).map_err(usage)?;
                (expected_sign(n as i64), ErrorValue::Series(g.series), Some(g.prefactor))
            }
            Some(pattern) => {
                let e = error_term(pattern, n as i64, &mode).map_err(usage)?;
                (e.sign, e.abs_value(), None)
            }
        };
        match (&value, out.format) {
            (ErrorValue::Series(s), Format::Json) => {
                writeln!(w, "{}", serde_json::to_string(&SeriesRow { n, sign, abs: s, prefactor }).unwrap())?
            }
            (ErrorValue::Series(s), Format::Csv) => {
                for (e, c) in s.iter() {
                    writeln!(w, "{n},{e},\"{c}\"")?;
                }
            }
            (ErrorValue::Series(s), Format::Pretty) => {
                let terms: Vec<String> = s.iter().map(|(e, c)| format!("{c} t^{e}")).collect();
                let factor = match prefactor {
                    Some(Prefactor::HalfOneMinusTanh) => "(1 - tanh(t))/2 * ",
                    Some(Prefactor::OneMinusTanhOverU) => "(1 - tanh(t))/u * ",
                    _ => "",
                };
                writeln!(w, "|E_{n}| = {factor}({} + O(t^{}))", terms.join(" + "), s.trunc().unwrap_or(order) + 1)?
            }
            (ErrorValue::Interval(i), Format::Json) => writeln!(
                w,
                "{}",
                serde_json::to_string(&IntervalRow { n, sign, lo: i.lo(), hi: i.hi() }).unwrap()
            )?,
            (ErrorValue::Interval(i), Format::Csv) => writeln!(w, "{n},{sign},\"{}\",\"{}\"", i.lo(), i.hi())?,
            (ErrorValue::Interval(i), Format::Pretty) => {
                writeln!(w, "|E_{n}| ~ {:.6e}  (sign {sign:+})", i.midpoint().to_f64_lossy())?
            }
        }
    }
    w.flush()?;
    Ok(true)
}

#[derive(Serialize)]
struct ResidualRow<'a> {
    n: i64,
    lo: &'a Rational,
    hi: &'a Rational,
}

fn cmd_partial_sums(p: &PatternArgs, last: u64, power: u8, digits: u32, out: &OutputArgs) -> CmdResult {
    if p.symbolic {
        return Err(usage("partial sums need a numeric pattern"));
    }
    let pattern = build_pattern(p)?;
    let eps = eps_from_digits(digits)?;
    let rows = match numeric_partial_sums(&pattern, last, power, &eps) {
        Ok(rows) => rows,
        Err(e @ Error::WidthDominates { .. }) => return Err(Failure::Check(e.to_string())),
        Err(e) => return Err(usage(e)),
    };
    let mut w = open_output(&out.output)?;
    if out.format == Format::Csv {
        writeln!(w, "n,lo,hi")?;
    }
    for r in &rows {
        let (lo, hi) = (r.residual.lo(), r.residual.hi());
        match out.format {
            Format::Json => writeln!(w, "{}", serde_json::to_string(&ResidualRow { n: r.n, lo, hi }).unwrap())?,
            Format::Csv => writeln!(w, "{},\"{lo}\",\"{hi}\"", r.n)?,
            Format::Pretty => writeln!(w, "n={:<4} residual <= {:.6e}", r.n, hi.to_f64_lossy())?,
        }
    }
    w.flush()?;
    Ok(true)
}

#[derive(Serialize)]
struct FailedInstance {
    id: String,
    k: i64,
}

#[derive(Serialize)]
struct EntrySummary {
    id: &'static str,
    label: &'static str,
    range: [u64; 2],
    reports: usize,
    failures: usize,
    failed: Vec<FailedInstance>,
}

#[derive(Serialize)]
struct Summary {
    identities: Vec<EntrySummary>,
    total_reports: usize,
    total_failures: usize,
}

#[derive(Serialize)]
struct ReportFile {
    summary: Summary,
    /// Wall-clock milliseconds per identity; the only non-deterministic part.
    timings_ms: Vec<(&'static str, u128)>,
}

fn cmd_report(output: &Option<PathBuf>) -> CmdResult {
    let threads = catalog::thread_cap_from_env().map_err(usage)?;
    let mut identities = Vec::new();
    let mut timings_ms = Vec::new();
    for e in catalog::catalog() {
        let started = Instant::now();
        let reports = catalog::run_range(e, e.default_range.clone(), threads).map_err(usage)?;
        timings_ms.push((e.id, started.elapsed().as_millis()));
        let failed: Vec<FailedInstance> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| FailedInstance { id: r.identity_id.clone(), k: r.instance })
            .collect();
        identities.push(EntrySummary {
            id: e.id,
            label: e.label,
            range: [*e.default_range.start(), *e.default_range.end()],
            reports: reports.len(),
            failures: failed.len(),
            failed,
        });
    }
    let total_reports = identities.iter().map(|i| i.reports).sum();
    let total_failures = identities.iter().map(|i| i.failures).sum();
    let file = ReportFile {
        summary: Summary { identities, total_reports, total_failures },
        timings_ms,
    };
    let mut w = open_output(output)?;
    writeln!(w, "{}", serde_json::to_string_pretty(&file).unwrap())?;
    w.flush()?;
    Ok(total_failures == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { ids, range, out } => cmd_verify(ids, range.as_deref(), out),
        Command::Expand { quantity, order, output } => cmd_expand(*quantity, *order, output),
        Command::Errors { pattern, last, order, digits, out } => cmd_errors(pattern, *last, *order, *digits, out),
        Command::PartialSums { pattern, last, power, digits, out } => {
            cmd_partial_sums(pattern, *last, *power, *digits, out)
        }
        Command::Report { output } => cmd_report(output),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("cf-errsum: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("cf-errsum: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("cf-errsum: {e}");
            ExitCode::from(2)
        }
    }
}
