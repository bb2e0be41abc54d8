use rayon::prelude::*;

use super::gram::{gram_index_below, gram_point};
use super::ZeroRecord;
use crate::error::{Error, Result};
use crate::zeta_eval;

/// Maximum dyadic subdivision depth per Gram interval (2⁶ = 64 pieces).
pub const MAX_SUBDIVISION_LEVEL: u32 = 6;
/// Refinement stops once the certified bracket is this narrow.
pub const TARGET_WIDTH: f64 = 1e-10;

const NUDGE: f64 = 1e-6;
const NUDGE_TRIES: usize = 8;

/// An interval across which Z(t) changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Sample {
    pub t: f64,
    pub z: f64,
}

/// Z at `t` with a certified sign, or `None` if |Z| is within its error bound.
pub(crate) fn certified_z(t: f64) -> Result<Option<f64>> {
    let (z, e) = zeta_eval::hardy_z_with_bound(t)?;
    Ok((z.abs() > e).then_some(z))
}

/// Z sampled at `t`, nudged upward by micro-steps if the sign is uncertain.
fn sample(t: f64) -> Result<Sample> {
    for k in 0..NUDGE_TRIES {
        let tk = t + NUDGE * k as f64;
        if let Some(z) = certified_z(tk)? {
            return Ok(Sample { t: tk, z });
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "sign of Z undetermined near t = {t}"
    )))
}

/// Z evaluated at a Gram point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GramSample {
    pub n: i64,
    pub sample: Sample,
    /// (−1)ⁿ Z(gₙ) > 0, evaluated at gₙ itself.
    pub good: bool,
}

pub(crate) fn gram_sample(n: i64) -> Result<GramSample> {
    let g = gram_point(n)?;
    let sample = sample(g)?;
    let parity = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(GramSample {
        n,
        good: sample.t == g && parity * sample.z > 0.0,
        sample,
    })
}

fn same_sign(a: f64, b: f64) -> bool {
    (a > 0.0) == (b > 0.0)
}

fn sign_changes(samples: &[Sample]) -> Vec<Bracket> {
    samples
        .windows(2)
        .filter(|w| !same_sign(w[0].z, w[1].z))
        .map(|w| Bracket {
            lo: w[0].t,
            hi: w[1].t,
        })
        .collect()
}

/// Result of scanning one Gram block, delimited by consecutive good Gram points.
#[derive(Debug, Clone)]
pub(crate) struct BlockScan {
    pub first: i64,
    pub last: i64,
    pub brackets: Vec<Bracket>,
    pub level: u32,
}

impl BlockScan {
    /// Rosser's rule: a block spanning k Gram intervals holds k zeros.
    pub fn expected(&self) -> usize {
        (self.last - self.first) as usize
    }

    pub fn short(&self) -> bool {
        self.brackets.len() < self.expected()
    }
}

/// Scans the block between `block[0]` and `block[last]`, refining its grid
/// dyadically until Rosser's count is met or the depth limit is reached.
pub(crate) fn scan_block(block: &[GramSample]) -> Result<BlockScan> {
    let first = block[0].n;
    let last = block[block.len() - 1].n;
    let expected = (last - first) as usize;
    let coarse: Vec<Sample> = block.iter().map(|g| g.sample).collect();
    let mut brackets = sign_changes(&coarse);
    let mut level = 0;
    while brackets.len() < expected && level < MAX_SUBDIVISION_LEVEL {
        level += 1;
        let pieces = 1usize << level;
        let mut fine = Vec::with_capacity(expected * pieces + 1);
        for w in block.windows(2) {
            let (a, b) = (w[0].sample.t, w[1].sample.t);
            fine.push(w[0].sample);
            for k in 1..pieces {
                fine.push(sample(a + (b - a) * k as f64 / pieces as f64)?);
            }
        }
        fine.push(block[block.len() - 1].sample);
        brackets = sign_changes(&fine);
    }
    Ok(BlockScan {
        first,
        last,
        brackets,
        level,
    })
}

/// Brackets in [2, g₋₁]; there are none, but the interval is sampled anyway.
pub(crate) fn scan_below_first_gram(g_minus_1: &Sample) -> Result<Vec<Bracket>> {
    let lo = zeta_eval::THETA_MIN_T;
    let pieces = 64;
    let mut pts = Vec::with_capacity(pieces + 1);
    for k in 0..pieces {
        pts.push(sample(lo + (g_minus_1.t - lo) * k as f64 / pieces as f64)?);
    }
    pts.push(*g_minus_1);
    Ok(sign_changes(&pts))
}

/// Gram samples for indices `from..=` onward, until the first good Gram point
/// at or beyond `t_stop` (evaluated in parallel batches).
pub(crate) fn gram_samples_until(from: i64, t_stop: f64) -> Result<Vec<GramSample>> {
    const BATCH: i64 = 256;
    let mut out: Vec<GramSample> = Vec::new();
    let mut next = from;
    loop {
        let batch: Vec<GramSample> = (next..next + BATCH)
            .into_par_iter()
            .map(gram_sample)
            .collect::<Result<_>>()?;
        next += BATCH;
        for g in batch {
            let done = g.good && g.sample.t >= t_stop;
            out.push(g);
            if done {
                return Ok(out);
            }
        }
    }
}

/// Largest good Gram index whose point does not exceed `t` (at least −1).
pub(crate) fn good_gram_at_or_below(t: f64) -> Result<i64> {
    let mut n = gram_index_below(t)?.max(-1);
    while n > -1 && !gram_sample(n)?.good {
        n -= 1;
    }
    Ok(n)
}

/// Splits Gram samples into blocks at good points and scans each in parallel.
/// The first sample must be good.
pub(crate) fn scan_blocks(samples: &[GramSample]) -> Result<Vec<BlockScan>> {
    let mut cuts = Vec::new();
    for (i, g) in samples.iter().enumerate() {
        if g.good {
            cuts.push(i);
        }
    }
    cuts.windows(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|w| scan_block(&samples[w[0]..=w[1]]))
        .collect()
}

/// Brackets for every sign change of Z whose zero lies in (t_lo, t_hi].
///
/// Brackets come from a grid anchored at good Gram points, so the same zero
/// always gets the same bracket no matter how the height range is split.
pub fn scan_zeros(t_lo: f64, t_hi: f64) -> Result<Vec<Bracket>> {
    let t_lo = t_lo.max(zeta_eval::THETA_MIN_T);
    if !(t_lo < t_hi) {
        return Ok(Vec::new());
    }
    let start = good_gram_at_or_below(t_lo)?;
    let samples = gram_samples_until(start, t_hi)?;
    let mut all = Vec::new();
    if start == -1 {
        all.extend(scan_below_first_gram(&samples[0].sample)?);
    }
    for block in scan_blocks(&samples)? {
        all.extend(block.brackets);
    }
    let mut out = Vec::with_capacity(all.len());
    for b in all {
        if zero_in_range(b, t_lo, t_hi)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Whether the single zero in `b` lies in (t_lo, t_hi].
fn zero_in_range(b: Bracket, t_lo: f64, t_hi: f64) -> Result<bool> {
    if b.hi <= t_lo || b.lo > t_hi {
        return Ok(false);
    }
    let z_lo = sample(b.lo)?.z;
    if b.lo <= t_lo {
        let at = sample(t_lo)?;
        if !same_sign(at.z, z_lo) {
            return Ok(false);
        }
    }
    if b.hi > t_hi {
        let at = sample(t_hi)?;
        if same_sign(at.z, z_lo) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rounds to 15 significant digits, the precision written to the cache.
pub(crate) fn round_sig15(x: f64) -> f64 {
    format!("{x:.14e}").parse().expect("formatted float parses")
}

fn ulp(x: f64) -> f64 {
    let x = x.abs();
    f64::from_bits(x.to_bits() + 1) - x
}

/// Refines a sign-change bracket to a certified ordinate.
///
/// The returned record has `index == 0`; indices are assigned when records
/// are merged into a cache.
pub fn refine_zero(bracket: Bracket) -> Result<ZeroRecord> {
    let lost = Error::LostBracket {
        lo: bracket.lo,
        hi: bracket.hi,
    };
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (Some(mut fa), Some(mut fb)) = (certified_z(a)?, certified_z(b)?) else {
        return Err(lost);
    };
    if same_sign(fa, fb) || !(a < b) {
        return Err(lost);
    }
    let width_goal = TARGET_WIDTH.max(16.0 * ulp(b));
    let mut side = 0i8;
    let mut prev_width = b - a;
    let mut iter = 0;
    while b - a > width_goal {
        iter += 1;
        if iter > 400 {
            return Err(Error::ConvergenceFailure(format!(
                "refinement stalled in [{a}, {b}]"
            )));
        }
        let width = b - a;
        let mut x = (a * fb - b * fa) / (fb - fa);
        let margin = width / 64.0;
        if !(x > a + margin && x < b - margin) || iter % 3 == 0 && width > 0.5 * prev_width {
            x = 0.5 * (a + b);
        }
        if iter % 3 == 0 {
            prev_width = width;
        }
        match certified_z(x)? {
            Some(fx) if same_sign(fx, fa) => {
                a = x;
                fa = fx;
                if side == -1 {
                    fb *= 0.5;
                }
                side = -1;
            }
            Some(fx) => {
                b = x;
                fb = fx;
                if side == 1 {
                    fa *= 0.5;
                }
                side = 1;
            }
            None => {
                // |Z(x)| is below its error bound: bracket x tightly.
                let mut h = 2.0 * ulp(x).max(width_goal / 8.0);
                loop {
                    let (l, r) = (x - h, x + h);
                    if l <= a || r >= b {
                        break;
                    }
                    if let (Some(fl), Some(fr)) = (certified_z(l)?, certified_z(r)?) {
                        if same_sign(fl, fa) && !same_sign(fr, fa) {
                            a = l;
                            b = r;
                            fa = fl;
                            fb = fr;
                        }
                        break;
                    }
                    h *= 2.0;
                }
                if b - a > 4.0 * h {
                    x = 0.5 * (a + b);
                    if let Some(fx) = certified_z(x)? {
                        if same_sign(fx, fa) {
                            a = x;
                            fa = fx;
                        } else {
                            b = x;
                            fb = fx;
                        }
                    } else {
                        break;
                    }
                } else {
                    break;
                }
                side = 0;
            }
        }
    }
    let mid = 0.5 * (a + b);
    let gamma = round_sig15(mid);
    let err_bound = 0.5 * (b - a) + (gamma - mid).abs() + 2.0 * ulp(gamma);
    Ok(ZeroRecord {
        index: 0,
        gamma,
        err_bound,
    })
}
