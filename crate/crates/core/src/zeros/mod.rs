//! Location, certification and persistence of zeros on the critical line.
//!
//! Zeros are found as sign changes of Hardy's Z(t) on a grid anchored at
//! Gram points. Between consecutive "good" Gram points (where (−1)ⁿZ(gₙ) > 0)
//! Rosser's rule fixes the number of zeros, and the grid is refined until
//! that many sign changes appear. Completeness is then audited against the
//! Riemann–von Mangoldt smooth term with slack |S(T)| ≤ 2.

mod cache;
mod gram;
mod scan;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zeta_eval;

pub use cache::{BINARY_MAGIC, CSV_HEADER};
pub use gram::{gram_index_below, gram_point};
pub use scan::{refine_zero, scan_zeros, Bracket, MAX_SUBDIVISION_LEVEL, TARGET_WIDTH};

pub const FORMAT_VERSION: u32 = 1;
/// Audit slack on |located − smooth term|.
pub const AUDIT_SLACK: f64 = 2.0;

/// A certified zero 1/2 + iγ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    /// 1-based rank by height; 0 until merged into a cache.
    pub index: u64,
    pub gamma: f64,
    pub err_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCache {
    pub t_max_certified: f64,
    pub records: Vec<ZeroRecord>,
    pub format_version: u32,
}

/// Diagnostics from a cache build.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BuildStats {
    pub gram_points: usize,
    pub blocks: usize,
    /// Blocks needing subdivision before Rosser's count was met.
    pub subdivided_blocks: usize,
    /// Blocks still short of Rosser's count at maximum depth.
    pub short_blocks: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub height: f64,
    pub located: usize,
    pub smooth: f64,
    pub checkpoints: usize,
    /// Largest |located − smooth| over all checkpoints.
    pub worst_deviation: f64,
    pub worst_height: f64,
    pub pass: bool,
}

/// Builds and audits a cache of all zeros with 0 < γ ≤ `t_max`.
///
/// `threads == 0` uses the global rayon pool.
pub fn build(t_max: f64, threads: usize) -> Result<ZeroCache> {
    build_with_stats(t_max, threads).map(|(c, _)| c)
}

pub fn build_with_stats(t_max: f64, threads: usize) -> Result<(ZeroCache, BuildStats)> {
    if !(t_max.is_finite() && t_max <= zeta_eval::T_ABS_MAX) {
        return Err(Error::OutOfValidatedRegion { re: 0.5, im: t_max });
    }
    if threads == 0 {
        return build_inner(t_max);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::ConvergenceFailure(format!("thread pool: {e}")))?;
    pool.install(|| build_inner(t_max))
}

fn build_inner(t_max: f64) -> Result<(ZeroCache, BuildStats)> {
    let samples = scan::gram_samples_until(-1, t_max)?;
    let mut brackets = scan::scan_below_first_gram(&samples[0].sample)?;
    let blocks = scan::scan_blocks(&samples)?;
    let mut stats = BuildStats {
        gram_points: samples.len(),
        blocks: blocks.len(),
        ..Default::default()
    };
    for b in &blocks {
        if b.level > 0 {
            stats.subdivided_blocks += 1;
        }
        if b.short() {
            stats.short_blocks.push((b.first, b.last));
        }
        brackets.extend_from_slice(&b.brackets);
    }
    let refined: Vec<ZeroRecord> = brackets
        .into_par_iter()
        .map(refine_zero)
        .collect::<Result<_>>()?;
    let mut records: Vec<ZeroRecord> = refined.into_iter().filter(|r| r.gamma <= t_max).collect();
    for (i, r) in records.iter_mut().enumerate() {
        r.index = i as u64 + 1;
    }
    let cache = ZeroCache {
        t_max_certified: t_max,
        records,
        format_version: FORMAT_VERSION,
    };
    if let Some(&(first, _)) = stats.short_blocks.first() {
        let height = gram_point(first)?;
        return Err(Error::AuditFailed {
            height,
            located: cache.located_below(height),
            smooth: zeta_eval::smooth_zero_count(height),
        });
    }
    cache.audit_completeness(t_max)?;
    Ok((cache, stats))
}

impl ZeroCache {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn gammas(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.gamma)
    }

    fn located_below(&self, t: f64) -> usize {
        self.records.partition_point(|r| r.gamma <= t)
    }

    /// Number of cached zeros with γ ≤ `t`.
    pub fn count_zeros(&self, t: f64) -> Result<usize> {
        if t > self.t_max_certified {
            return Err(Error::BeyondCertifiedHeight {
                requested: t,
                certified: self.t_max_certified,
            });
        }
        Ok(self.located_below(t))
    }

    /// The records with γ ≤ `t`.
    pub fn records_up_to(&self, t: f64) -> Result<&[ZeroRecord]> {
        let n = self.count_zeros(t)?;
        Ok(&self.records[..n])
    }

    /// Compares the located count with the smooth term just before and at
    /// every zero up to `t`, and at `t` itself.
    pub fn audit_completeness(&self, t: f64) -> Result<AuditReport> {
        let located = self.count_zeros(t)?;
        let mut worst = (0.0f64, t);
        let mut checkpoints = 0;
        let mut check = |height: f64, count: usize| {
            checkpoints += 1;
            let dev = (count as f64 - zeta_eval::smooth_zero_count(height)).abs();
            if dev > worst.0 {
                worst = (dev, height);
            }
        };
        for (k, r) in self.records[..located].iter().enumerate() {
            check(r.gamma - r.err_bound, k);
            check(r.gamma, k + 1);
        }
        check(t, located);
        let report = AuditReport {
            height: t,
            located,
            smooth: zeta_eval::smooth_zero_count(t),
            checkpoints,
            worst_deviation: worst.0,
            worst_height: worst.1,
            pass: worst.0 <= AUDIT_SLACK,
        };
        if !report.pass {
            return Err(Error::AuditFailed {
                height: worst.1,
                located: self.located_below(worst.1),
                smooth: zeta_eval::smooth_zero_count(worst.1),
            });
        }
        Ok(report)
    }

    /// Rosser check: at every good Gram point gₙ ≤ `t`, exactly n + 1 zeros
    /// lie below it. Returns the number of good Gram points checked.
    pub fn audit_gram(&self, t: f64) -> Result<usize> {
        let top = gram_index_below(t.min(self.t_max_certified))?;
        if top < -1 {
            return Ok(0);
        }
        let checked: Vec<Option<(i64, f64)>> = (-1..=top)
            .into_par_iter()
            .map(|n| {
                let g = scan::gram_sample(n)?;
                Ok(g.good.then_some((n, g.sample.t)))
            })
            .collect::<Result<_>>()?;
        let mut count = 0;
        for (n, g) in checked.into_iter().flatten() {
            let located = self.located_below(g);
            if located as i64 != n + 1 {
                return Err(Error::AuditFailed {
                    height: g,
                    located,
                    smooth: zeta_eval::smooth_zero_count(g),
                });
            }
            count += 1;
        }
        Ok(count)
    }

    /// Re-evaluates Z around each record: |Z(γ)| ≤ 10⁻⁶ and a certified sign
    /// change across [γ − err, γ + err].
    pub fn verify_records(&self) -> Result<()> {
        self.records.par_iter().try_for_each(|r| {
            let z = zeta_eval::hardy_z(r.gamma)?;
            let lo = scan::certified_z(r.gamma - r.err_bound)?;
            let hi = scan::certified_z(r.gamma + r.err_bound)?;
            let changes = matches!((lo, hi), (Some(a), Some(b)) if (a > 0.0) != (b > 0.0));
            if z.abs() > 1e-6 || !changes {
                return Err(Error::LostBracket {
                    lo: r.gamma - r.err_bound,
                    hi: r.gamma + r.err_bound,
                });
            }
            Ok(())
        })
    }
}
