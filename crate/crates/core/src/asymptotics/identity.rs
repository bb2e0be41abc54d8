use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{chi_threshold, main_term_eq3, main_term_thm2, PredictionBreakdown};
use crate::error::Result;
use crate::moments::ShiftParameter;

pub const IDENTITY_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_IDENTITY_POINTS: usize = 1000;

/// Outcome of the eq3/thm2 identity, breakdown-sum and conjugation checks.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub points: usize,
    pub seed: u64,
    pub max_eq3_thm2_rel: f64,
    pub max_breakdown_rel: f64,
    pub conjugation_mismatches: usize,
    pub pass: bool,
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / scale.abs()
    }
}

/// |total − Σ terms| relative to Σ |terms|.
fn breakdown_rel(b: &PredictionBreakdown) -> f64 {
    let terms = b.terms();
    let sum: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    rel(b.total, sum, scale.max(f64::MIN_POSITIVE))
}

/// Draws admissible (δ, T) where the two cutoffs coincide: T = 10^u with
/// u ∈ [2, 12], δ₂ ∈ [−1, 1], δ₁ in the region and away from 0.
pub fn sample_matching_points(n: usize, seed: u64) -> Vec<(ShiftParameter, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let t = 10f64.powf(rng.gen_range(2.0..12.0));
        let l = t.ln();
        let delta1 = rng.gen_range(-1.0 / l..0.5 + 1.0 / l);
        let delta2 = rng.gen_range(-1.0..1.0);
        let chi = delta1 <= chi_threshold(t);
        let quarter = delta1 >= -1.0 / l && delta1 < 0.25;
        if chi != quarter || delta1.abs() < 1e-6 || (0.5 - delta1).abs() < 1e-6 {
            continue;
        }
        out.push((ShiftParameter::new(delta1, delta2).expect("|δ₂| ≤ 1"), t));
    }
    out
}

pub fn identity_suite(n: usize, seed: u64) -> Result<IdentityReport> {
    let mut max_id: f64 = 0.0;
    let mut max_bd: f64 = 0.0;
    let mut conj = 0;
    for (d, t) in sample_matching_points(n, seed) {
        let e = main_term_eq3(d, t)?;
        let h = main_term_thm2(d, t)?;
        max_id = max_id.max(rel(e.total, h.total, e.total.abs().max(h.total.abs())));
        max_bd = max_bd.max(breakdown_rel(&e)).max(breakdown_rel(&h));
        let dc = ShiftParameter { delta2: -d.delta2, ..d };
        if main_term_eq3(dc, t)?.total != e.total || main_term_thm2(dc, t)?.total != h.total {
            conj += 1;
        }
    }
    Ok(IdentityReport {
        points: n,
        seed,
        max_eq3_thm2_rel: max_id,
        max_breakdown_rel: max_bd,
        conjugation_mismatches: conj,
        pass: max_id <= IDENTITY_TOLERANCE && max_bd <= IDENTITY_TOLERANCE && conj == 0,
    })
}
