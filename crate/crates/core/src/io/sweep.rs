use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use super::{fmt15, ser15, ser15_opt};
use crate::asymptotics::{
    classify_regime, main_term_eq3_with, main_term_gonek, main_term_quadratic, main_term_thm2,
    RegimeReport, POLE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::moments::{moment_s, ShiftParameter};
use crate::zeros::ZeroCache;

pub const SWEEP_HEADER: [&str; 10] = [
    "delta1",
    "delta2",
    "T",
    "empirical",
    "predicted",
    "ratio",
    "regime",
    "n_zeros",
    "formula",
    "reason",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Eq3,
    Thm2,
    Quadratic,
    Gonek,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::Eq3 => "eq3",
            Formula::Thm2 => "thm2",
            Formula::Quadratic => "quadratic",
            Formula::Gonek => "gonek",
        })
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq3" => Ok(Formula::Eq3),
            "thm2" => Ok(Formula::Thm2),
            "quadratic" => Ok(Formula::Quadratic),
            "gonek" => Ok(Formula::Gonek),
            other => Err(Error::Parse(format!("unknown formula {other:?}"))),
        }
    }
}

/// Boolean part of a [`RegimeReport`], written as
/// `small=0;large=1;gap=0;chi=0;ind=0;region=1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeFlags {
    pub small: bool,
    pub large: bool,
    pub gap: bool,
    pub chi: bool,
    pub indicator_quarter: bool,
    pub in_region: bool,
}

impl From<&RegimeReport> for RegimeFlags {
    fn from(r: &RegimeReport) -> Self {
        Self {
            small: r.small_condition,
            large: r.large_condition,
            gap: r.gap_zone,
            chi: r.chi == 1,
            indicator_quarter: r.indicator_quarter,
            in_region: r.in_region,
        }
    }
}

impl fmt::Display for RegimeFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| u8::from(v);
        write!(
            f,
            "small={};large={};gap={};chi={};ind={};region={}",
            b(self.small),
            b(self.large),
            b(self.gap),
            b(self.chi),
            b(self.indicator_quarter),
            b(self.in_region)
        )
    }
}

impl FromStr for RegimeFlags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut vals = [None; 6];
        let keys = ["small", "large", "gap", "chi", "ind", "region"];
        for kv in s.split(';') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad regime field {kv:?}")))?;
            let i = keys
                .iter()
                .position(|&x| x == k)
                .ok_or_else(|| Error::Parse(format!("unknown regime key {k:?}")))?;
            vals[i] = Some(match v {
                "0" => false,
                "1" => true,
                _ => return Err(Error::Parse(format!("bad regime flag {kv:?}"))),
            });
        }
        let get = |i: usize| vals[i].ok_or_else(|| Error::Parse(format!("missing {}", keys[i])));
        Ok(Self {
            small: get(0)?,
            large: get(1)?,
            gap: get(2)?,
            chi: get(3)?,
            indicator_quarter: get(4)?,
            in_region: get(5)?,
        })
    }
}

/// One (δ, T, formula) comparison. Missing values mark a failed row whose
/// cause is in `reason`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    #[serde(serialize_with = "ser15")]
    pub delta1: f64,
    #[serde(serialize_with = "ser15")]
    pub delta2: f64,
    #[serde(rename = "T", serialize_with = "ser15")]
    pub t: f64,
    #[serde(serialize_with = "ser15_opt")]
    pub empirical: Option<f64>,
    #[serde(serialize_with = "ser15_opt")]
    pub predicted: Option<f64>,
    /// empirical / predicted, `None` when predicted is 0 or missing.
    #[serde(serialize_with = "ser15_opt")]
    pub ratio: Option<f64>,
    pub regime: RegimeFlags,
    pub n_zeros: Option<usize>,
    pub formula: Formula,
    pub reason: Option<String>,
}

impl ComparisonRow {
    pub fn is_failure(&self) -> bool {
        self.reason.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub delta_list: Vec<ShiftParameter>,
    pub t_checkpoints: Vec<f64>,
    pub formulas: Vec<Formula>,
    pub output_path: PathBuf,
    pub cache_path: PathBuf,
}

impl SweepConfig {
    /// Checkpoints must be ascending and within the cache's certified height.
    pub fn validate(&self, cache: &ZeroCache) -> Result<()> {
        if self.delta_list.is_empty() || self.t_checkpoints.is_empty() || self.formulas.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if self.t_checkpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("T checkpoints must be strictly ascending".into()));
        }
        let last = *self.t_checkpoints.last().expect("non-empty");
        if last > cache.t_max_certified {
            return Err(Error::BeyondCertifiedHeight {
                requested: last,
                certified: cache.t_max_certified,
            });
        }
        Ok(())
    }
}

fn predict(formula: Formula, delta: ShiftParameter, t: f64) -> Result<f64> {
    match formula {
        Formula::Eq3 => {
            let limit = delta.delta1.abs() < POLE_TOLERANCE;
            main_term_eq3_with(delta, t, limit).map(|b| b.total)
        }
        Formula::Thm2 => main_term_thm2(delta, t).map(|b| b.total),
        Formula::Quadratic => Ok(main_term_quadratic(delta, t)),
        Formula::Gonek => {
            if delta.delta1 != 0.0 {
                return Err(Error::InvalidArgument("gonek needs a purely imaginary shift".into()));
            }
            let alpha = delta.delta2 * (t / (2.0 * std::f64::consts::PI)).ln()
                / (2.0 * std::f64::consts::PI);
            main_term_gonek(alpha, t)
        }
    }
}

fn row(formula: Formula, delta: ShiftParameter, t: f64, cache: &ZeroCache) -> ComparisonRow {
    let regime = RegimeFlags::from(&classify_regime(delta, t));
    let mut out = ComparisonRow {
        delta1: delta.delta1,
        delta2: delta.delta2,
        t,
        empirical: None,
        predicted: None,
        ratio: None,
        regime,
        n_zeros: None,
        formula,
        reason: None,
    };
    let mut reasons = Vec::new();
    match moment_s(delta, t, cache) {
        Ok(m) => {
            out.empirical = Some(m.value.re);
            out.n_zeros = Some(m.n_zeros);
        }
        Err(e) => reasons.push(format!("empirical: {e}")),
    }
    match predict(formula, delta, t) {
        Ok(p) => out.predicted = Some(p),
        Err(e) => reasons.push(format!("predicted: {e}")),
    }
    if let (Some(e), Some(p)) = (out.empirical, out.predicted) {
        if p != 0.0 {
            out.ratio = Some(e / p);
        }
    }
    if !reasons.is_empty() {
        out.reason = Some(reasons.join("; "));
    }
    out
}

/// Rows in δ-major, T-minor order, formulas innermost.
pub fn run_sweep(config: &SweepConfig, cache: &ZeroCache) -> Result<Vec<ComparisonRow>> {
    config.validate(cache)?;
    let mut rows = Vec::new();
    for &delta in &config.delta_list {
        for &t in &config.t_checkpoints {
            for &f in &config.formulas {
                rows.push(row(f, delta, t, cache));
            }
        }
    }
    Ok(rows)
}

fn opt15(x: Option<f64>) -> String {
    x.map(fmt15).unwrap_or_default()
}

pub fn write_rows_csv(rows: &[ComparisonRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            fmt15(r.delta1),
            fmt15(r.delta2),
            fmt15(r.t),
            opt15(r.empirical),
            opt15(r.predicted),
            opt15(r.ratio),
            r.regime.to_string(),
            r.n_zeros.map(|n| n.to_string()).unwrap_or_default(),
            r.formula.to_string(),
            r.reason.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_f64(field: &str, name: &str) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::Parse(format!("{name}: {field:?} is not a number")))
}

fn parse_opt(field: &str, name: &str) -> Result<Option<f64>> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse_f64(field, name).map(Some)
    }
}

/// Blank input parses as no rows; anything else needs the sweep header.
pub fn parse_rows_csv(text: &str) -> Result<Vec<ComparisonRow>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(SWEEP_HEADER) {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        rows.push(ComparisonRow {
            delta1: parse_f64(f(0), "delta1")?,
            delta2: parse_f64(f(1), "delta2")?,
            t: parse_f64(f(2), "T")?,
            empirical: parse_opt(f(3), "empirical")?,
            predicted: parse_opt(f(4), "predicted")?,
            ratio: parse_opt(f(5), "ratio")?,
            regime: f(6).parse()?,
            n_zeros: if f(7).is_empty() {
                None
            } else {
                Some(
                    f(7).parse()
                        .map_err(|_| Error::Parse(format!("n_zeros: {:?}", f(7))))?,
                )
            },
            formula: f(8).parse()?,
            reason: Some(f(9).to_string()).filter(|s| !s.is_empty()),
        });
    }
    Ok(rows)
}
