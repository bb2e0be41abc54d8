//! Closed-form main terms for S(δ, T) and the tools built on them: the
//! g-function and its small-δ expansion, the dominance threshold ε₀, the
//! corrected error envelope E(T) with its inequality audit, and the regime
//! classifier.
//!
//! Throughout, X = T/2π and L = ln X. The five-term main term is
//!
//! ```text
//! ζ(1+2δ₁) X (L − 1)                                    density
//! + 2 Re ζ′/ζ(1+δ) ζ(1+2δ₁) X                            logderiv_plus
//! − 2 Re ζ(1+δ̄) ζ(1−δ)/(1−δ) X^{1−δ}                     cross
//! + c · 2 Re ζ′/ζ(1−δ̄) ζ(1−2δ₁)/(1−2δ₁) X^{1−2δ₁}        logderiv_minus
//! + c · ζ(1−2δ₁)/(1−2δ₁) X^{1−2δ₁} (L − 1/(1−2δ₁))        secondary_main
//! ```
//!
//! where the cutoff c is χ(δ₁) in the unconditional form and the indicator
//! of [−a/ln T, 1/4) in the conditional one.

mod envelope;
mod expansion;
mod identity;
mod regime;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{gonek_alpha_bound, ShiftParameter};
use crate::summation::NeumaierSum;
use crate::zeta_eval::{self, STIELTJES};
use crate::Complex64;

pub use envelope::{
    audit_section2, audit_section2_report, default_audit_delta1_grid, default_audit_t_grid,
    error_envelope, error_envelope_exponent, error_envelope_with_a, EnvelopeCase, Section2Report,
    StepKind, StepResult,
};
pub use expansion::{
    default_eps_grid, dominance_region, dominance_region_with, g_expansion_check,
    DominanceReport, ExpansionResidual,
};
pub use identity::{
    identity_suite, sample_matching_points, IdentityReport, DEFAULT_IDENTITY_POINTS,
    IDENTITY_TOLERANCE,
};
pub use regime::{classify_regime, classify_regime_with, RegimeReport, RegimeThresholds};

/// Zero-free-region constant A = 1/(4 · 57.54).
pub const A_ZERO_FREE: f64 = 1.0 / (4.0 * 57.54);
/// |δ₁| below this needs limit mode.
pub const POLE_TOLERANCE: f64 = 1e-8;
/// Smallest height accepted by the main-term evaluators.
pub const T_MIN: f64 = 100.0;

/// (ln T)^{−2/5} (ln ln T)^{−1/5}: the χ threshold and the E(T) case split.
pub fn chi_threshold(t: f64) -> f64 {
    let l = t.ln();
    l.powf(-0.4) * l.ln().powf(-0.2)
}

/// Per-term decomposition of a five-term main term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictionBreakdown {
    pub term_density: f64,
    pub term_logderiv_plus: f64,
    pub term_cross: f64,
    pub term_logderiv_minus: f64,
    pub term_secondary_main: f64,
    pub cutoff_active: bool,
    /// δ₁ = 0 evaluated as a limit. The finite pair sums are then reported in
    /// `term_density` (density + secondary) and `term_logderiv_plus` (both
    /// log-derivative terms); the partner fields are 0.
    pub limit_mode: bool,
    pub total: f64,
}

impl PredictionBreakdown {
    pub fn terms(&self) -> [f64; 5] {
        [
            self.term_density,
            self.term_logderiv_plus,
            self.term_cross,
            self.term_logderiv_minus,
            self.term_secondary_main,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cutoff {
    /// χ(δ₁): active when δ₁ ≤ (ln T)^{−2/5}(ln ln T)^{−1/5}.
    Chi,
    /// 𝟙 of [−a/ln T, 1/4).
    Quarter,
}

impl Cutoff {
    fn active(self, delta: &ShiftParameter, t: f64) -> bool {
        match self {
            Cutoff::Chi => delta.delta1 <= chi_threshold(t),
            Cutoff::Quarter => delta.delta1 < 0.25 && delta.delta1 >= -delta.a / t.ln(),
        }
    }
}

/// The five complex summands of g(δ) (each already carries its factor 2
/// and sign), so that term = X · Re(piece).
#[derive(Debug, Clone, Copy)]
struct Pieces {
    density: Complex64,
    logderiv_plus: Complex64,
    cross: Complex64,
    logderiv_minus: Complex64,
    secondary_main: Complex64,
    cutoff_active: bool,
    limit_mode: bool,
}

/// ζ(1 + w).
fn zeta_at(w: Complex64) -> Result<Complex64> {
    zeta_eval::zeta_one_plus(w).map(|(v, _)| v)
}

/// ζ′/ζ(1 + w).
fn log_deriv_at(w: Complex64) -> Result<Complex64> {
    zeta_eval::log_deriv_one_plus(w).map(|(v, _)| v)
}

fn check_height(t: f64) -> Result<()> {
    if !(t >= T_MIN) || !t.is_finite() {
        return Err(Error::DomainTooSmall { t, min: T_MIN });
    }
    Ok(())
}

/// Pieces for δ₂ ≥ 0; callers reflect δ₂ < 0 through conjugation.
fn pieces(delta: &ShiftParameter, t: f64, cutoff: Cutoff, limit: bool) -> Result<Pieces> {
    debug_assert!(delta.delta2 >= 0.0);
    let x = t / (2.0 * PI);
    let l = x.ln();
    let d = delta.complex();
    let one = Complex64::new(1.0, 0.0);
    let cutoff_active = cutoff.active(delta, t);

    let cross = {
        let z_plus = zeta_at(d.conj())?;
        let z_minus = zeta_at(-d)?;
        -2.0 * z_plus * z_minus / (one - d) * (-d * l).exp()
    };

    if delta.delta1.abs() < POLE_TOLERANCE {
        if !limit || delta.delta2 == 0.0 {
            return Err(Error::PoleUncancelled {
                delta1: delta.delta1,
            });
        }
        // δ₁ → 0: poles cancel within each pair.
        let g0 = STIELTJES[0];
        let s = Complex64::new(1.0, delta.delta2);
        let f = log_deriv_at(Complex64::new(0.0, delta.delta2))?;
        let (fp, _) = zeta_eval::log_deriv_prime(s)?;
        let pair_a = (l - 1.0).powi(2) + 2.0 * g0 * (l - 1.0) + 1.0;
        let pair_b = 2.0 * (fp + f * (2.0 * g0 + l - 1.0));
        return Ok(Pieces {
            density: Complex64::new(pair_a, 0.0),
            logderiv_plus: pair_b,
            cross,
            logderiv_minus: Complex64::new(0.0, 0.0),
            secondary_main: Complex64::new(0.0, 0.0),
            cutoff_active: true,
            limit_mode: true,
        });
    }

    let z_2d1 = zeta_at(Complex64::new(2.0 * delta.delta1, 0.0))?;
    let density = z_2d1 * (l - 1.0);
    let logderiv_plus = 2.0 * log_deriv_at(d)? * z_2d1;

    let (logderiv_minus, secondary_main) = if cutoff_active {
        let m = 1.0 - 2.0 * delta.delta1;
        if m.abs() < POLE_TOLERANCE {
            return Err(Error::PoleUncancelled {
                delta1: delta.delta1,
            });
        }
        let common = zeta_at(Complex64::new(-2.0 * delta.delta1, 0.0))? / m * (-2.0 * delta.delta1 * l).exp();
        (
            2.0 * log_deriv_at(-d.conj())? * common,
            common * (l - 1.0 / m),
        )
    } else {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    };

    Ok(Pieces {
        density,
        logderiv_plus,
        cross,
        logderiv_minus,
        secondary_main,
        cutoff_active,
        limit_mode: false,
    })
}

fn canonical(delta: &ShiftParameter) -> ShiftParameter {
    ShiftParameter {
        delta2: delta.delta2.abs(),
        ..*delta
    }
}

fn breakdown(p: &Pieces, t: f64) -> PredictionBreakdown {
    let x = t / (2.0 * PI);
    let term = |c: Complex64| x * c.re;
    let terms = [
        term(p.density),
        term(p.logderiv_plus),
        term(p.cross),
        term(p.logderiv_minus),
        term(p.secondary_main),
    ];
    let total = terms.iter().copied().collect::<NeumaierSum>().value();
    PredictionBreakdown {
        term_density: terms[0],
        term_logderiv_plus: terms[1],
        term_cross: terms[2],
        term_logderiv_minus: terms[3],
        term_secondary_main: terms[4],
        cutoff_active: p.cutoff_active,
        limit_mode: p.limit_mode,
        total,
    }
}

/// The unconditional five-term asymptotic with cutoff χ(δ₁).
pub fn main_term_eq3(delta: ShiftParameter, t: f64) -> Result<PredictionBreakdown> {
    main_term_eq3_with(delta, t, false)
}

/// As [`main_term_eq3`]; with `limit` set, |δ₁| < 10⁻⁸ is evaluated as the
/// δ₁ → 0 limit (δ₂ ≠ 0 required).
pub fn main_term_eq3_with(delta: ShiftParameter, t: f64, limit: bool) -> Result<PredictionBreakdown> {
    check_height(t)?;
    let p = pieces(&canonical(&delta), t, Cutoff::Chi, limit)?;
    Ok(breakdown(&p, t))
}

/// Average of [`main_term_eq3`] at δ₁ = ±h; a numerical stand-in for the
/// limit at δ₁ = 0.
pub fn main_term_eq3_symmetric(delta2: f64, t: f64, h: f64) -> Result<f64> {
    let plus = main_term_eq3(ShiftParameter::new(h, delta2)?, t)?;
    let minus = main_term_eq3(ShiftParameter::new(-h, delta2)?, t)?;
    Ok(0.5 * (plus.total + minus.total))
}

/// The conditional main term with indicator 𝟙_{[−a/ln T, 1/4)}(δ₁).
pub fn main_term_thm2(delta: ShiftParameter, t: f64) -> Result<PredictionBreakdown> {
    check_height(t)?;
    delta.check_region(t)?;
    let p = pieces(&canonical(&delta), t, Cutoff::Quarter, false)?;
    Ok(breakdown(&p, t))
}

/// (|δ|²/12)(T/2π) ln⁴T.
pub fn main_term_quadratic(delta: ShiftParameter, t: f64) -> f64 {
    delta.complex().norm_sqr() / 12.0 * (t / (2.0 * PI)) * t.ln().powi(4)
}

/// (1 − (sin πα / πα)²)(T/2π) ln²T.
pub fn main_term_gonek(alpha: f64, t: f64) -> Result<f64> {
    let bound = gonek_alpha_bound(t);
    if !(alpha.abs() <= bound) {
        return Err(Error::AlphaOutOfRange { alpha, bound });
    }
    let x = PI * alpha;
    let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
    Ok((1.0 - sinc * sinc) * (t / (2.0 * PI)) * t.ln().powi(2))
}

/// Main term of the derivative moment, (1/12)(T/2π) ln⁴T.
pub fn main_term_deriv(t: f64) -> f64 {
    t / (2.0 * PI) * t.ln().powi(4) / 12.0
}

fn g_from_pieces(p: &Pieces, t: f64) -> Complex64 {
    let x = t / (2.0 * PI);
    let re = breakdown(p, t).total / x;
    let im = [
        p.density,
        p.logderiv_plus,
        p.cross,
        p.logderiv_minus,
        p.secondary_main,
    ]
    .iter()
    .map(|c| c.im)
    .collect::<NeumaierSum>()
    .value();
    Complex64::new(re, im)
}

/// g(δ), with S(δ) = (T/2π) Re g(δ) + O(T^{1/2+ε}).
///
/// Re g is derived from the same terms as [`main_term_thm2`], so
/// (T/2π) Re g reproduces its total to rounding.
pub fn g_function(delta: ShiftParameter, t: f64) -> Result<Complex64> {
    g_function_with(delta, t, false)
}

/// As [`g_function`]; with `limit` set, δ₁ = 0 is evaluated as a limit.
pub fn g_function_with(delta: ShiftParameter, t: f64, limit: bool) -> Result<Complex64> {
    check_height(t)?;
    delta.check_region(t)?;
    let p = pieces(&canonical(&delta), t, Cutoff::Quarter, limit)?;
    let g = g_from_pieces(&p, t);
    Ok(if delta.delta2 < 0.0 { g.conj() } else { g })
}
