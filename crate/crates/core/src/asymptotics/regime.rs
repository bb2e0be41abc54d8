use serde::Serialize;

use super::{chi_threshold, A_ZERO_FREE};
use crate::moments::ShiftParameter;

/// Finite stand-ins for the two limit conditions on (δ, T).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeThresholds {
    /// small: |δ| √T ln²T ≤ this.
    pub small: f64,
    /// large: |δ| T^{(A/2)(ln T)^{−2/5}(ln ln T)^{−1/5}} ≥ this.
    pub large: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            small: 1e-2,
            large: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub small_value: f64,
    pub large_value: f64,
    pub small_condition: bool,
    pub large_condition: bool,
    /// Neither condition holds: the unconditional result does not reach here.
    pub gap_zone: bool,
    /// χ(δ₁).
    pub chi: u8,
    /// δ₁ ∈ [−a/ln T, 1/4).
    pub indicator_quarter: bool,
    /// −a/ln T ≤ δ₁ ≤ 1/2 + a/ln T.
    pub in_region: bool,
}

pub fn classify_regime(delta: ShiftParameter, t: f64) -> RegimeReport {
    classify_regime_with(delta, t, RegimeThresholds::default())
}

pub fn classify_regime_with(delta: ShiftParameter, t: f64, th: RegimeThresholds) -> RegimeReport {
    let l = t.ln();
    let modulus = delta.complex().norm();
    let small_value = modulus * t.sqrt() * l * l;
    let large_value = modulus * t.powf(0.5 * A_ZERO_FREE * chi_threshold(t));
    let small_condition = small_value <= th.small;
    let large_condition = large_value >= th.large;
    let (lo, hi) = delta.region(t);
    RegimeReport {
        small_value,
        large_value,
        small_condition,
        large_condition,
        gap_zone: !(small_condition || large_condition),
        chi: u8::from(delta.delta1 <= chi_threshold(t)),
        indicator_quarter: delta.delta1 >= lo && delta.delta1 < 0.25,
        in_region: delta.delta1 >= lo && delta.delta1 <= hi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_regimes() {
        let r = classify_regime(ShiftParameter::new(0.3, 0.0).unwrap(), 1e4);
        assert!(r.large_condition && !r.gap_zone);
        let t: f64 = 1e10;
        let r = classify_regime(ShiftParameter::new(t.powf(-0.4), 0.0).unwrap(), t);
        assert!(r.gap_zone);
        // |δ|√T ln²T = 1/ln T, below 10⁻² once ln T > 100.
        let t: f64 = 1e60;
        let d = t.powf(-0.5) / t.ln().powi(3);
        let r = classify_regime(ShiftParameter::new(d, 0.0).unwrap(), t);
        assert!(r.small_condition && !r.gap_zone);
    }
}
