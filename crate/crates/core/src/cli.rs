//! The `zeta-moments` command line.
//!
//! Exit codes: 0 success, 2 domain or audit failure, 3 I/O or parse failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{
    audit_section2_report, default_audit_delta1_grid, default_audit_t_grid, default_eps_grid,
    dominance_region, identity_suite, main_term_eq3_with, main_term_gonek, main_term_quadratic,
    main_term_thm2, PredictionBreakdown, DEFAULT_IDENTITY_POINTS, POLE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::io::{
    parse_rows_csv, render_svg, run_sweep, ser15, ser15_opt, write_rows_csv, Formula, SweepConfig,
    XAxis,
};
use crate::moments::{moment_s, ShiftParameter};
use crate::zeros::{self, ZeroCache};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

const IDENTITY_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "zeta-moments", version, about = "Discrete moments of zeta over its zeros")]
pub struct Cli {
    /// Worker threads; 0 uses all available cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Locate, certify and save all zeros up to a height.
    Zeros(ZerosArgs),
    /// Empirical moment S(δ, T) from a zero cache.
    Moment(MomentArgs),
    /// Closed-form main term.
    Predict(PredictArgs),
    /// Empirical vs predicted over a δ × T grid.
    Sweep(SweepArgs),
    /// Run one of the audits and report PASS/FAIL.
    Audit(AuditArgs),
    /// Render sweep rows as an SVG ratio plot.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AuditKind {
    Zeros,
    Section2,
    Identity,
    Dominance,
}

#[derive(Debug, Args)]
struct ZerosArgs {
    #[arg(long)]
    t_max: f64,
    /// Output path; `.bin` selects the binary format, anything else CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct MomentArgs {
    /// Shift as `re,im` (or `re`).
    #[arg(long, value_parser = parse_delta, allow_hyphen_values = true)]
    delta: (f64, f64),
    #[arg(long)]
    t_max: f64,
    #[arg(long)]
    cache: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    #[arg(long, value_parser = parse_delta, allow_hyphen_values = true, default_value = "0,0")]
    delta: (f64, f64),
    /// Gonek parameter α (formula = gonek).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    t_max: f64,
    /// Region parameter a.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Repeat for each shift.
    #[arg(long = "delta", value_parser = parse_delta, allow_hyphen_values = true, required = true)]
    deltas: Vec<(f64, f64)>,
    /// Comma-separated ascending heights.
    #[arg(long, value_delimiter = ',', required = true)]
    t_grid: Vec<f64>,
    /// Repeat or comma-separate; defaults to thm2.
    #[arg(long = "formula", value_enum, value_delimiter = ',', default_value = "thm2")]
    formulas: Vec<Formula>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    cache: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, value_enum)]
    kind: AuditKind,
    /// Zero cache (kind = zeros).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Audit height for kind = zeros; defaults to the certified height.
    #[arg(long)]
    t_max: Option<f64>,
    /// Heights for section2 (default 1e6,1e9,1e12) or dominance
    /// (default 1e4,1e6,1e8).
    #[arg(long, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Sweep CSV.
    rows: PathBuf,
    #[arg(long, value_enum, default_value_t = XAxis::T)]
    x_axis: XAxis,
    #[arg(long)]
    out: PathBuf,
}

fn parse_delta(s: &str) -> std::result::Result<(f64, f64), String> {
    let mut parts = s.split(',');
    let mut next = |name: &str| -> std::result::Result<f64, String> {
        match parts.next() {
            None => Ok(0.0),
            Some(p) => p
                .trim()
                .parse()
                .map_err(|_| format!("{name} part {p:?} is not a number")),
        }
    };
    let re = next("real")?;
    let im = next("imaginary")?;
    if parts.next().is_some() {
        return Err("expected `re,im`".into());
    }
    Ok((re, im))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Parse(_) => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Parse(e.to_string()))
}

fn to_csv<T: Serialize>(v: &T) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(v).map_err(|e| Error::Parse(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(v: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(v),
        Format::Csv => to_csv(v),
    }
}

fn shift(delta: (f64, f64), a: f64) -> Result<ShiftParameter> {
    ShiftParameter::with_a(delta.0, delta.1, a)
}

fn cmd_zeros(args: &ZerosArgs, threads: usize) -> Result<()> {
    let (cache, stats) = zeros::build_with_stats(args.t_max, threads)?;
    if args.out.extension().is_some_and(|e| e == "bin") {
        cache.save_binary(&args.out)?;
    } else {
        cache.save_csv(&args.out)?;
    }
    println!(
        "zeros: {} records up to T = {} (Gram points {}, blocks {}, subdivided {})",
        cache.len(),
        args.t_max,
        stats.gram_points,
        stats.blocks,
        stats.subdivided_blocks
    );
    if !cache.is_empty() {
        let audit = cache.audit_completeness(args.t_max)?;
        println!(
            "audit: PASS ({} checkpoints, worst |located - smooth| = {:.3} at T = {:.3})",
            audit.checkpoints, audit.worst_deviation, audit.worst_height
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct MomentOutput {
    #[serde(serialize_with = "ser15")]
    delta_re: f64,
    #[serde(serialize_with = "ser15")]
    delta_im: f64,
    #[serde(serialize_with = "ser15")]
    t_max: f64,
    n_zeros: usize,
    #[serde(serialize_with = "ser15")]
    s_value: f64,
    #[serde(serialize_with = "ser15")]
    s_imag_residual: f64,
    #[serde(serialize_with = "ser15")]
    sum_error_estimate: f64,
}

fn cmd_moment(args: &MomentArgs) -> Result<()> {
    let cache = ZeroCache::load(&args.cache)?;
    let delta = shift(args.delta, 1.0)?;
    let m = moment_s(delta, args.t_max, &cache)?;
    let out = MomentOutput {
        delta_re: delta.delta1,
        delta_im: delta.delta2,
        t_max: args.t_max,
        n_zeros: m.n_zeros,
        s_value: m.value.re,
        s_imag_residual: m.value.im,
        sum_error_estimate: m.sum_error_estimate,
    };
    emit(args.out.as_deref(), &render(&out, args.format)?)
}

#[derive(Serialize)]
struct PredictOutput {
    formula: Formula,
    #[serde(serialize_with = "ser15")]
    delta_re: f64,
    #[serde(serialize_with = "ser15")]
    delta_im: f64,
    #[serde(serialize_with = "ser15_opt", skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(serialize_with = "ser15")]
    t: f64,
    #[serde(serialize_with = "ser15")]
    a: f64,
    #[serde(serialize_with = "ser15_opt", skip_serializing_if = "Option::is_none")]
    term_density: Option<f64>,
    #[serde(serialize_with = "ser15_opt", skip_serializing_if = "Option::is_none")]
    term_logderiv_plus: Option<f64>,
    #[serde(serialize_with = "ser15_opt", skip_serializing_if = "Option::is_none")]
    term_cross: Option<f64>,
    #[serde(serialize_with = "ser15_opt", skip_serializing_if = "Option::is_none")]
    term_logderiv_minus: Option<f64>,
    #[serde(serialize_with = "ser15_opt", skip_serializing_if = "Option::is_none")]
    term_secondary_main: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff_active: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    limit_mode: Option<bool>,
    #[serde(serialize_with = "ser15")]
    total: f64,
}

impl PredictOutput {
    fn plain(formula: Formula, delta: &ShiftParameter, t: f64, total: f64) -> Self {
        Self {
            formula,
            delta_re: delta.delta1,
            delta_im: delta.delta2,
            alpha: None,
            t,
            a: delta.a,
            term_density: None,
            term_logderiv_plus: None,
            term_cross: None,
            term_logderiv_minus: None,
            term_secondary_main: None,
            cutoff_active: None,
            limit_mode: None,
            total,
        }
    }

    fn with_breakdown(formula: Formula, delta: &ShiftParameter, t: f64, b: &PredictionBreakdown) -> Self {
        Self {
            term_density: Some(b.term_density),
            term_logderiv_plus: Some(b.term_logderiv_plus),
            term_cross: Some(b.term_cross),
            term_logderiv_minus: Some(b.term_logderiv_minus),
            term_secondary_main: Some(b.term_secondary_main),
            cutoff_active: Some(b.cutoff_active),
            limit_mode: Some(b.limit_mode),
            ..Self::plain(formula, delta, t, b.total)
        }
    }
}

fn cmd_predict(args: &PredictArgs) -> Result<()> {
    let delta = shift(args.delta, args.a)?;
    let t = args.t_max;
    let out = match args.formula {
        Formula::Eq3 => {
            let limit = delta.delta1.abs() < POLE_TOLERANCE && delta.delta2 != 0.0;
            let b = main_term_eq3_with(delta, t, limit)?;
            PredictOutput::with_breakdown(args.formula, &delta, t, &b)
        }
        Formula::Thm2 => {
            let b = main_term_thm2(delta, t)?;
            PredictOutput::with_breakdown(args.formula, &delta, t, &b)
        }
        Formula::Quadratic => {
            PredictOutput::plain(args.formula, &delta, t, main_term_quadratic(delta, t))
        }
        Formula::Gonek => {
            let alpha = args
                .alpha
                .ok_or_else(|| Error::InvalidArgument("--alpha is required for gonek".into()))?;
            PredictOutput {
                alpha: Some(alpha),
                ..PredictOutput::plain(args.formula, &delta, t, main_term_gonek(alpha, t)?)
            }
        }
    };
    emit(args.out.as_deref(), &render(&out, args.format)?)
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let config = SweepConfig {
        delta_list: args
            .deltas
            .iter()
            .map(|&d| shift(d, args.a))
            .collect::<Result<_>>()?,
        t_checkpoints: args.t_grid.clone(),
        formulas: args.formulas.clone(),
        output_path: args.out.clone(),
        cache_path: args.cache.clone(),
    };
    let cache = ZeroCache::load(&config.cache_path)?;
    let rows = run_sweep(&config, &cache)?;
    emit(Some(&config.output_path), &write_rows_csv(&rows)?)?;
    let failed = rows.iter().filter(|r| r.is_failure()).count();
    println!("sweep: {} rows, {} failed", rows.len(), failed);
    if failed == rows.len() {
        return Err(Error::InvalidArgument("every sweep row failed".into()));
    }
    Ok(())
}

/// A report plus its verdict.
struct Verdict {
    pass: bool,
    text: String,
    json: String,
}

fn audit_zeros(args: &AuditArgs) -> Result<Verdict> {
    let path = args
        .cache
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("--cache is required for kind = zeros".into()))?;
    let cache = ZeroCache::load(path)?;
    let t = args.t_max.unwrap_or(cache.t_max_certified);
    cache.verify_records()?;
    let report = cache.audit_completeness(t)?;
    let gram = cache.audit_gram(t)?;
    let text = format!(
        "audit zeros: PASS\n  records verified: {}\n  height: {}\n  located: {}\n  smooth term: {:.4}\n  checkpoints: {}\n  worst |located - smooth|: {:.4} at T = {:.4}\n  good Gram points checked: {}\n",
        cache.len(),
        t,
        report.located,
        report.smooth,
        report.checkpoints,
        report.worst_deviation,
        report.worst_height,
        gram
    );
    #[derive(Serialize)]
    struct Out<'a> {
        kind: &'static str,
        pass: bool,
        report: &'a zeros::AuditReport,
        good_gram_points_checked: usize,
    }
    let json = to_json(&Out {
        kind: "zeros",
        pass: true,
        report: &report,
        good_gram_points_checked: gram,
    })?;
    Ok(Verdict {
        pass: true,
        text,
        json,
    })
}

fn pass_fail(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn audit_section2(args: &AuditArgs) -> Result<Verdict> {
    let t_grid = args.t_grid.clone().unwrap_or_else(default_audit_t_grid);
    let report = audit_section2_report(&t_grid, &default_audit_delta1_grid(), args.a)?;
    let mut text = format!(
        "audit section2: {}\n  gating steps: {} ({} failed)\n  informational failures: {}\n  boundary checks: {} ({} failed)\n  (o(.) steps pass when the fitted ratio stays <= 1 over the grid; this is evidence, not proof)\n",
        pass_fail(report.pass),
        report.gating_steps,
        report.gating_failures,
        report.informational_failures,
        report.boundary.len(),
        report.boundary.iter().filter(|b| !b.pass).count()
    );
    for s in report.steps.iter().filter(|s| !s.pass) {
        text.push_str(&format!(
            "  {} {}: T = {:e}, delta1 = {}: lhs {:e} vs rhs {:e}\n",
            if s.gating { "FAIL" } else { "info" },
            s.step,
            s.t,
            s.delta1,
            s.lhs,
            s.rhs
        ));
    }
    Ok(Verdict {
        pass: report.pass,
        text,
        json: to_json(&report)?,
    })
}

fn audit_identity() -> Result<Verdict> {
    let r = identity_suite(DEFAULT_IDENTITY_POINTS, IDENTITY_SEED)?;
    let text = format!(
        "audit identity: {}\n  points: {}\n  max |eq3 - thm2| relative: {:e}\n  max breakdown residual: {:e}\n  conjugation mismatches: {}\n",
        pass_fail(r.pass),
        r.points,
        r.max_eq3_thm2_rel,
        r.max_breakdown_rel,
        r.conjugation_mismatches
    );
    Ok(Verdict {
        pass: r.pass,
        text,
        json: to_json(&r)?,
    })
}

fn audit_dominance(args: &AuditArgs) -> Result<Verdict> {
    let t_grid = args.t_grid.clone().unwrap_or_else(|| vec![1e4, 1e6, 1e8]);
    let eps = default_eps_grid();
    let reports = t_grid
        .iter()
        .map(|&t| dominance_region(t, &eps))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.eps0 > 0.0 && !r.is_vacuous());
    let mut text = format!("audit dominance: {}\n", pass_fail(pass));
    for r in &reports {
        text.push_str(&format!(
            "  T = {:e}: eps0 = {:.4}{}, floor |delta| log T = {:.4}, first failure at {}, eps0 without floor = {:.4}\n",
            r.t,
            r.eps0,
            if r.is_vacuous() { " (vacuous: no sample inside)" } else { "" },
            r.min_scale,
            r.first_failure.map_or("none".to_string(), |v| format!("{v:.4}")),
            r.eps0_without_floor
        ));
    }
    Ok(Verdict {
        pass,
        text,
        json: to_json(&reports)?,
    })
}

fn cmd_audit(args: &AuditArgs) -> Result<bool> {
    let v = match args.kind {
        AuditKind::Zeros => audit_zeros(args)?,
        AuditKind::Section2 => audit_section2(args)?,
        AuditKind::Identity => audit_identity()?,
        AuditKind::Dominance => audit_dominance(args)?,
    };
    let body = match args.format {
        Some(Format::Json) => v.json,
        _ => v.text,
    };
    emit(args.out.as_deref(), &body)?;
    Ok(v.pass)
}

fn cmd_plot(args: &PlotArgs) -> Result<()> {
    let text = fs::read_to_string(&args.rows).map_err(|e| Error::io(&args.rows, e))?;
    let rows = parse_rows_csv(&text)?;
    emit(Some(&args.out), &render_svg(&rows, args.x_axis))
}

fn dispatch(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Zeros(a) => cmd_zeros(a, cli.threads).map(|_| true),
        Command::Moment(a) => cmd_moment(a).map(|_| true),
        Command::Predict(a) => cmd_predict(a).map(|_| true),
        Command::Sweep(a) => cmd_sweep(a).map(|_| true),
        Command::Audit(a) => cmd_audit(a),
        Command::Plot(a) => cmd_plot(a).map(|_| true),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_DOMAIN,
        Err(e) => {
            let code = match (&cli.command, &e) {
                (Command::Audit(_), Error::CorruptCache(_) | Error::VersionMismatch { .. }) => {
                    EXIT_DOMAIN
                }
                (Command::Plot(_), _) => EXIT_IO,
                _ => exit_code(&e),
            };
            eprintln!("error: {e}");
            code
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads == 0 {
        return dispatch(&cli);
    }
    match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            EXIT_DOMAIN
        }
    }
}
