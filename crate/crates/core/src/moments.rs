//! Discrete moments over certified zeros ρ = 1/2 + iγ, 0 < γ ≤ T.
//!
//! Per-zero terms are evaluated in parallel and then reduced sequentially in
//! ascending γ with Neumaier summation, so results do not depend on the
//! number of chunks or threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::summation::NeumaierSum;
use crate::zeros::ZeroCache;
use crate::zeta_eval;
use crate::Complex64;

/// Largest admissible |δ2|.
pub const DELTA2_BOUND: f64 = 10.0;
/// Relative tolerance between the bilinear and squared forms of each term.
pub const BILINEAR_TOLERANCE: f64 = 1e-8;

/// The shift δ = δ1 + iδ2 together with the region parameter a > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParameter {
    pub delta1: f64,
    pub delta2: f64,
    pub a: f64,
}

impl ShiftParameter {
    pub fn new(delta1: f64, delta2: f64) -> Result<Self> {
        Self::with_a(delta1, delta2, 1.0)
    }

    pub fn with_a(delta1: f64, delta2: f64, a: f64) -> Result<Self> {
        if !(delta2.abs() <= DELTA2_BOUND) || !delta1.is_finite() {
            return Err(Error::ShiftOutOfRange {
                delta2,
                bound: DELTA2_BOUND,
            });
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Parse(format!("region parameter a = {a} must be positive")));
        }
        Ok(Self { delta1, delta2, a })
    }

    pub fn from_complex(delta: Complex64) -> Result<Self> {
        Self::new(delta.re, delta.im)
    }

    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.delta1, self.delta2)
    }

    /// Bounds of the theorem region −a/ln T ≤ δ1 ≤ 1/2 + a/ln T.
    pub fn region(&self, t: f64) -> (f64, f64) {
        let w = self.a / t.ln();
        (-w, 0.5 + w)
    }

    pub fn check_region(&self, t: f64) -> Result<()> {
        let (lo, hi) = self.region(t);
        if self.delta1 < lo || self.delta1 > hi {
            return Err(Error::OutsideRegion {
                delta1: self.delta1,
                lo,
                hi,
            });
        }
        Ok(())
    }
}

/// A computed moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    /// Real part: Σ |·|² (the computation path). Imaginary part: Im of the
    /// defining bilinear sum, zero up to evaluation error on the line.
    pub value: Complex64,
    /// The defining bilinear sum.
    pub bilinear: Complex64,
    pub n_zeros: usize,
    pub t_max: f64,
    pub sum_error_estimate: f64,
    /// Largest per-term evaluation bound.
    pub per_zero_eval_error: f64,
}

impl MomentResult {
    fn empty(t_max: f64) -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            bilinear: Complex64::new(0.0, 0.0),
            n_zeros: 0,
            t_max,
            sum_error_estimate: 0.0,
            per_zero_eval_error: 0.0,
        }
    }

    /// |Im S| ≤ max(10⁻⁸ |Re S|, accumulated evaluation bound).
    pub fn is_real_within_tolerance(&self) -> bool {
        self.value.im.abs()
            <= (1e-8 * self.value.re.abs())
                .max(self.n_zeros as f64 * self.per_zero_eval_error)
                .max(self.sum_error_estimate)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MomentOptions {
    /// Number of evaluation chunks; 0 lets rayon decide. The reduction is
    /// sequential in ascending γ whatever the value.
    pub chunks: usize,
    /// Fail with EvaluationMismatch when the two forms of a term disagree.
    pub check_bilinear: bool,
}

impl Default for MomentOptions {
    fn default() -> Self {
        Self {
            chunks: 0,
            check_bilinear: true,
        }
    }
}

/// One evaluated term: |f(s)|², f(s)·f(s̄)-type product, and an error bound.
#[derive(Debug, Clone, Copy)]
struct Term {
    squared: f64,
    bilinear: Complex64,
    bound: f64,
}

fn squared_term(gamma: f64, v: Complex64, w: Complex64, e: f64, check: bool) -> Result<Term> {
    let squared = v.norm_sqr();
    let bilinear = v * w;
    let bound = 2.0 * v.norm() * e + e * e;
    if check {
        let diff = (bilinear - squared).norm();
        if diff > BILINEAR_TOLERANCE * squared + 2.0 * bound {
            return Err(Error::EvaluationMismatch {
                gamma,
                bilinear: bilinear.re,
                squared,
            });
        }
    }
    Ok(Term {
        squared,
        bilinear,
        bound,
    })
}

fn evaluate_terms<F>(gammas: &[f64], chunks: usize, f: F) -> Result<Vec<Term>>
where
    F: Fn(f64) -> Result<Term> + Sync,
{
    if chunks == 0 {
        return gammas.par_iter().map(|&g| f(g)).collect();
    }
    let size = gammas.len().div_ceil(chunks).max(1);
    let parts: Vec<Vec<Term>> = gammas
        .par_chunks(size)
        .map(|c| c.iter().map(|&g| f(g)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(parts.concat())
}

fn reduce(terms: &[Term], t_max: f64) -> MomentResult {
    let mut sq = NeumaierSum::new();
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let mut bound_sum = NeumaierSum::new();
    let mut worst = 0.0f64;
    for t in terms {
        sq.add(t.squared);
        re.add(t.bilinear.re);
        im.add(t.bilinear.im);
        bound_sum.add(t.bound);
        worst = worst.max(t.bound);
    }
    let value = sq.value();
    let n = terms.len();
    let rounding = 2.0 * f64::EPSILON * value.abs() + n as f64 * f64::EPSILON * f64::EPSILON * value.abs();
    let bilinear = Complex64::new(re.value(), im.value());
    MomentResult {
        value: Complex64::new(value, bilinear.im),
        bilinear,
        n_zeros: n,
        t_max,
        sum_error_estimate: bound_sum.value() + rounding,
        per_zero_eval_error: worst,
    }
}

fn gammas_up_to(cache: &ZeroCache, t: f64) -> Result<Vec<f64>> {
    Ok(cache.records_up_to(t)?.iter().map(|r| r.gamma).collect())
}

/// S(δ, T) = Σ_{0<γ≤T} ζ(ρ + δ) ζ(1 − ρ + δ̄), computed as Σ |ζ(ρ + δ)|².
///
/// δ = 0 gives exactly 0: every ρ in the cache is a certified zero.
pub fn moment_s(delta: ShiftParameter, t: f64, cache: &ZeroCache) -> Result<MomentResult> {
    moment_s_with(delta, t, cache, MomentOptions::default())
}

pub fn moment_s_with(
    delta: ShiftParameter,
    t: f64,
    cache: &ZeroCache,
    opts: MomentOptions,
) -> Result<MomentResult> {
    let gammas = gammas_up_to(cache, t)?;
    if delta.delta1 == 0.0 && delta.delta2 == 0.0 {
        let mut r = MomentResult::empty(t);
        r.n_zeros = gammas.len();
        return Ok(r);
    }
    let sigma = 0.5 + delta.delta1;
    let terms = evaluate_terms(&gammas, opts.chunks, |g| {
        let h = g + delta.delta2;
        let (v, acc) = zeta_eval::zeta(Complex64::new(sigma, h))?;
        let (w, acc_w) = zeta_eval::zeta(Complex64::new(sigma, -h))?;
        let e = acc.abs_error_bound.max(acc_w.abs_error_bound);
        squared_term(g, v, w, e, opts.check_bilinear)
    })?;
    Ok(reduce(&terms, t))
}

/// Σ_{0<γ≤T} ζ′(ρ) ζ′(1 − ρ), computed as Σ |ζ′(ρ)|².
pub fn moment_deriv(t: f64, cache: &ZeroCache) -> Result<MomentResult> {
    moment_deriv_with(t, cache, MomentOptions::default())
}

pub fn moment_deriv_with(t: f64, cache: &ZeroCache, opts: MomentOptions) -> Result<MomentResult> {
    let gammas = gammas_up_to(cache, t)?;
    let terms = evaluate_terms(&gammas, opts.chunks, |g| {
        let (v, acc) = zeta_eval::zeta_prime(Complex64::new(0.5, g))?;
        let (w, acc_w) = zeta_eval::zeta_prime(Complex64::new(0.5, -g))?;
        let e = acc.abs_error_bound.max(acc_w.abs_error_bound);
        squared_term(g, v, w, e, opts.check_bilinear)
    })?;
    Ok(reduce(&terms, t))
}

/// Largest admissible |α| at height T: (1/4π) ln(T/2π).
pub fn gonek_alpha_bound(t: f64) -> f64 {
    (t / (2.0 * std::f64::consts::PI)).ln() / (4.0 * std::f64::consts::PI)
}

/// The purely imaginary shift δ = 2πiα / ln(T/2π).
pub fn gonek_shift(alpha: f64, t: f64) -> Result<ShiftParameter> {
    let bound = gonek_alpha_bound(t);
    if !(alpha.abs() <= bound) {
        return Err(Error::AlphaOutOfRange { alpha, bound });
    }
    ShiftParameter::new(0.0, 2.0 * std::f64::consts::PI * alpha / (t / (2.0 * std::f64::consts::PI)).ln())
}

/// Gonek's moment S(2πiα / ln(T/2π), T).
pub fn moment_gonek(alpha: f64, t: f64, cache: &ZeroCache) -> Result<MomentResult> {
    moment_s(gonek_shift(alpha, t)?, t, cache)
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::oracle::oracle_zeta;
    use crate::zeros;

    fn cache() -> &'static ZeroCache {
        static C: OnceLock<ZeroCache> = OnceLock::new();
        C.get_or_init(|| zeros::build(1100.0, 0).unwrap())
    }

    #[test]
    fn empty_below_first_zero() {
        let r = moment_s(ShiftParameter::new(0.05, 0.0).unwrap(), 10.0, cache()).unwrap();
        assert_eq!(r.n_zeros, 0);
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert_eq!(moment_deriv(10.0, cache()).unwrap().value.re, 0.0);
    }

    #[test]
    fn terms_match_oracle_below_100() {
        let d = ShiftParameter::new(0.05, 0.0).unwrap();
        let r = moment_s(d, 100.0, cache()).unwrap();
        assert_eq!(r.n_zeros, 29);
        let mut sum = 0.0;
        for rec in cache().records_up_to(100.0).unwrap() {
            let v = oracle_zeta(Complex64::new(0.55, rec.gamma), 1e-13).unwrap().norm_sqr();
            let (mine, _) = zeta_eval::zeta(Complex64::new(0.55, rec.gamma)).unwrap();
            assert!((mine.norm_sqr() - v).abs() <= 1e-8 * v);
            sum += v;
        }
        assert!((r.value.re - sum).abs() <= 1e-8 * sum);
    }

    #[test]
    fn bilinear_agrees_with_squared() {
        let d = ShiftParameter::new(0.1, 0.1).unwrap();
        let r = moment_s(d, 100.0, cache()).unwrap();
        assert!((r.bilinear - r.value.re).norm() <= 1e-8 * r.value.re);
        assert!(r.is_real_within_tolerance());
    }

    #[test]
    fn chunking_is_bit_identical() {
        let d = ShiftParameter::new(0.2, 0.1).unwrap();
        let base = moment_s_with(d, 1000.0, cache(), MomentOptions { chunks: 1, check_bilinear: true }).unwrap();
        for chunks in [0, 2, 8, 13] {
            let r = moment_s_with(d, 1000.0, cache(), MomentOptions { chunks, check_bilinear: true }).unwrap();
            assert_eq!(r.value.re.to_bits(), base.value.re.to_bits());
            assert_eq!(r.value.im.to_bits(), base.value.im.to_bits());
        }
    }

    #[test]
    fn gonek_alpha_zero_and_delegation() {
        let r = moment_gonek(0.0, 1000.0, cache()).unwrap();
        assert_eq!(r.value.re, 0.0);
        assert_eq!(r.n_zeros, 649);
        let g = moment_gonek(0.3, 1000.0, cache()).unwrap();
        let s = moment_s(gonek_shift(0.3, 1000.0).unwrap(), 1000.0, cache()).unwrap();
        assert_eq!(g, s);
        assert!(g.value.re > 0.0);
        // α = 1/2 needs ln(T/2π) ≥ 2π, i.e. T ≳ 3367.
        assert!(matches!(moment_gonek(0.5, 1000.0, cache()), Err(Error::AlphaOutOfRange { .. })));
    }

    #[test]
    fn derivative_terms_match_finite_difference() {
        let r = moment_deriv(100.0, cache()).unwrap();
        assert!(r.value.re > 0.0);
        for rec in cache().records_up_to(100.0).unwrap().iter().step_by(7) {
            let h = 1e-5;
            let f = |t: f64| oracle_zeta(Complex64::new(0.5, t), 1e-14).unwrap();
            // d/ds = −i d/dt on the line.
            let fd = (f(rec.gamma + h) - f(rec.gamma - h)) / (2.0 * h) * Complex64::new(0.0, -1.0);
            let (d, _) = zeta_eval::zeta_prime(Complex64::new(0.5, rec.gamma)).unwrap();
            assert!((d - fd).norm() <= 1e-5 * d.norm());
        }
    }

    #[test]
    fn shift_validation() {
        assert!(ShiftParameter::new(0.1, 11.0).is_err());
        let d = ShiftParameter::new(0.6, 0.0).unwrap();
        assert!(d.check_region(1e4).is_ok());
        let d = ShiftParameter::new(0.7, 0.0).unwrap();
        assert!(matches!(d.check_region(1e4), Err(Error::OutsideRegion { .. })));
    }
}
