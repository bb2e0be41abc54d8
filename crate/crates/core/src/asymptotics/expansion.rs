use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{g_function_with, POLE_TOLERANCE};
use crate::error::{Error, Result};
use crate::moments::ShiftParameter;

/// Residual of Re g(δ) against its small-δ leading term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionResidual {
    /// |δ| ln T.
    pub scale: f64,
    pub re_g: f64,
    /// (|δ|²/12) ln⁴T.
    pub leading: f64,
    /// |δ|² ln³T + |δ|³ ln⁵T.
    pub denominator: f64,
    /// |Re g − leading| / denominator.
    pub residual: f64,
}

/// Checks Re g(δ) = (|δ|²/12) ln⁴T + O(|δ|² ln³T) + O(|δ|³ ln⁵T) at one
/// point of the zone 0 < |δ| ln T ≤ 1. δ₁ = 0 uses the limit form of g.
pub fn g_expansion_check(delta: ShiftParameter, t: f64) -> Result<ExpansionResidual> {
    let l = t.ln();
    let m = delta.complex().norm();
    let scale = m * l;
    if !(scale > 0.0 && scale <= 1.0) {
        return Err(Error::OutsideExpansionZone { value: scale });
    }
    let re_g = g_function_with(delta, t, delta.delta1.abs() < POLE_TOLERANCE)?.re;
    let leading = m * m / 12.0 * l.powi(4);
    let denominator = m * m * l.powi(3) + m.powi(3) * l.powi(5);
    Ok(ExpansionResidual {
        scale,
        re_g,
        leading,
        denominator,
        residual: (re_g - leading).abs() / denominator,
    })
}

/// ε values tried by [`dominance_region`]: 24 geometric steps from 10⁻² to 4.
pub fn default_eps_grid() -> Vec<f64> {
    let n = 24;
    (0..n)
        .map(|i| 1e-2 * 400f64.powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EpsRow {
    pub eps: f64,
    /// Samples with |δ| ln T ≤ eps.
    pub samples: usize,
    /// Of those, how many violate Re g ≥ |δ|² ln⁴T / 24.
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceReport {
    pub t: f64,
    /// Largest grid ε for which every sample with |δ| ln T ≤ ε passes
    /// (0 if the smallest ε already fails).
    pub eps0: f64,
    /// Lower limit |δ| ≥ T^{−1/4 + 0.05} expressed as |δ| ln T.
    pub min_scale: f64,
    /// Smallest Re g / ((|δ|²/12) ln⁴T) over samples within eps0.
    pub min_ratio: f64,
    /// Smallest |δ| ln T among failing samples, if any.
    pub first_failure: Option<f64>,
    /// The same threshold with the |δ| ≥ T^{−1/4+ε} floor dropped, sampling
    /// down to min(eps)/ln T. Diagnostic only.
    pub eps0_without_floor: f64,
    pub rows: Vec<EpsRow>,
}

impl DominanceReport {
    /// Whether some sample actually lies inside |δ| ln T ≤ eps0.
    pub fn is_vacuous(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.eps <= self.eps0)
            .all(|r| r.samples == 0)
    }
}

/// Exponent ε in the lower limit |δ| ≥ T^{−1/4+ε}.
pub const DOMINANCE_EPSILON: f64 = 0.05;
/// Default sampling: radii × angles.
pub const DEFAULT_DENSITY: (usize, usize) = (32, 32);

pub fn dominance_region(t: f64, eps_grid: &[f64]) -> Result<DominanceReport> {
    dominance_region_with(t, eps_grid, DEFAULT_DENSITY, 1.0)
}

/// Samples δ = r e^{iφ} on a geometric radius grid between T^{−1/4+0.05}
/// and max(eps)/ln T and a uniform angle grid. Doubling either count yields
/// a superset of the previous samples.
pub fn dominance_region_with(
    t: f64,
    eps_grid: &[f64],
    (n_radii, n_angles): (usize, usize),
    a: f64,
) -> Result<DominanceReport> {
    if !(t >= 1e3) {
        return Err(Error::DomainTooSmall { t, min: 1e3 });
    }
    let mut eps: Vec<f64> = eps_grid.iter().copied().filter(|e| *e > 0.0).collect();
    if eps.is_empty() || n_radii == 0 || n_angles == 0 {
        return Err(Error::EmptyGrid);
    }
    eps.sort_by(f64::total_cmp);
    let l = t.ln();
    let r_min = t.powf(-0.25 + DOMINANCE_EPSILON);
    let r_max = eps[eps.len() - 1] / l;
    let r_bottom = eps[0] / l;

    let shell = |lo: f64, hi: f64| -> Vec<(f64, ShiftParameter)> {
        let mut points = Vec::new();
        if lo > hi {
            return points;
        }
        for i in 0..=n_radii {
            let r = lo * (hi / lo).powf(i as f64 / n_radii as f64);
            for j in 0..n_angles {
                let phi = -PI + 0.1 + 2.0 * PI * j as f64 / n_angles as f64;
                let (d1, d2) = (r * phi.cos(), r * phi.sin());
                if d1.abs() < POLE_TOLERANCE {
                    continue;
                }
                if let Ok(d) = ShiftParameter::with_a(d1, d2, a) {
                    if d.check_region(t).is_ok() {
                        points.push((r * l, d));
                    }
                }
            }
        }
        points
    };
    let ratios = |points: Vec<(f64, ShiftParameter)>| -> Result<Vec<(f64, f64)>> {
        points
            .par_iter()
            .map(|&(scale, d)| {
                let re_g = g_function_with(d, t, false)?.re;
                let m2 = d.complex().norm_sqr();
                Ok((scale, re_g / (m2 / 12.0 * l.powi(4))))
            })
            .collect()
    };
    let evaluated = ratios(shell(r_min, r_max))?;
    let below_floor = ratios(shell(r_bottom, r_min.min(r_max)))?;

    let failure = first_failure(&evaluated);
    let eps0 = largest_passing(&eps, failure);
    let eps0_without_floor = largest_passing(
        &eps,
        first_failure(&below_floor)
            .into_iter()
            .chain(failure)
            .min_by(f64::total_cmp),
    );
    let rows = eps
        .iter()
        .map(|&e| {
            let inside = evaluated.iter().filter(|(s, _)| *s <= e);
            EpsRow {
                eps: e,
                samples: inside.clone().count(),
                failures: inside.filter(|(_, r)| !passes(*r)).count(),
            }
        })
        .collect();
    let min_ratio = evaluated
        .iter()
        .filter(|(s, _)| *s <= eps0)
        .map(|(_, r)| *r)
        .fold(f64::INFINITY, f64::min);
    Ok(DominanceReport {
        t,
        eps0,
        min_scale: r_min * l,
        min_ratio,
        first_failure: failure,
        eps0_without_floor,
        rows,
    })
}

/// Re g ≥ |δ|² ln⁴T / 24, i.e. at least half the leading term.
fn passes(ratio: f64) -> bool {
    ratio >= 0.5
}

fn first_failure(evaluated: &[(f64, f64)]) -> Option<f64> {
    evaluated
        .iter()
        .filter(|(_, r)| !passes(*r))
        .map(|(s, _)| *s)
        .min_by(f64::total_cmp)
}

fn largest_passing(eps: &[f64], failure: Option<f64>) -> f64 {
    eps.iter()
        .copied()
        .filter(|e| failure.is_none_or(|f| *e < f))
        .last()
        .unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_residual_small_and_conjugate_invariant() {
        let r = 1e-3 / 1e6f64.ln();
        let d = ShiftParameter::new(r / 2f64.sqrt(), r / 2f64.sqrt()).unwrap();
        let a = g_expansion_check(d, 1e6).unwrap();
        let b = g_expansion_check(ShiftParameter::new(d.delta1, -d.delta2).unwrap(), 1e6).unwrap();
        assert_eq!(a.residual, b.residual);
        assert!(a.residual < 20.0);
        let limit = g_expansion_check(ShiftParameter::new(0.0, r).unwrap(), 1e6).unwrap();
        assert!(limit.residual.is_finite() && limit.residual < 20.0);
        assert!(g_expansion_check(ShiftParameter::new(0.2, 0.0).unwrap(), 1e6).is_err());
    }

    #[test]
    fn density_doubling_never_grows_eps0() {
        let eps = default_eps_grid();
        for t in [1e4, 1e6, 1e8] {
            let coarse = dominance_region_with(t, &eps, (8, 8), 1.0).unwrap();
            let fine = dominance_region_with(t, &eps, (16, 16), 1.0).unwrap();
            assert!(fine.eps0 <= coarse.eps0);
            assert!(fine.eps0_without_floor <= coarse.eps0_without_floor);
        }
    }

    #[test]
    fn half_leading_term_at_small_scale() {
        // |δ| ln T = 0.01: Re g ≥ |δ|² ln⁴T / 24 from T = 10⁶ on, not at 10⁴.
        for (t, expected) in [(1e4f64, false), (1e6, true), (1e8, true)] {
            let r = 0.01 / t.ln();
            let d = ShiftParameter::new(r * 0.6, r * 0.8).unwrap();
            let g = super::super::g_function(d, t).unwrap().re;
            assert_eq!(g >= r * r * t.ln().powi(4) / 24.0, expected, "T = {t}");
        }
        assert!(dominance_region(1e4, &[]).is_err());
    }
}
