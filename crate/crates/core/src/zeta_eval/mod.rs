//! Evaluation of ζ(s), its derivatives, θ(t) and Z(t) in double precision.
//!
//! Method selection:
//! - |s − 1| < 0.5: Laurent series with tabulated Stieltjes constants;
//! - Re s = 1/2 exactly and |t| > 1000: Riemann–Siegel (value only);
//! - otherwise: Euler–Maclaurin with N = ⌈|t|/2⌉ + 20 and 12 corrections.
//!
//! Every public evaluator returns an [`EvalAccuracy`] whose bound covers the
//! truncation of the chosen method plus first-order rounding. For Re s < 1/2
//! the partial sums grow like N^{1−σ}, so the absolute bound grows with them.

mod dd;
mod euler_maclaurin;
pub mod gamma;
mod jet;
mod laurent;
mod riemann_siegel;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use laurent::STIELTJES;

/// Heights above which Z(t) and ζ(1/2 + it) use Riemann–Siegel.
pub const RIEMANN_SIEGEL_SWITCH: f64 = 1000.0;
/// Arguments closer than this to s = 1 are rejected.
pub const POLE_GUARD: f64 = 1e-12;
/// Smallest |ζ(s)| accepted by [`log_deriv`].
pub const NEAR_ZERO_GUARD: f64 = 1e-12;
/// Largest residual |Im(e^{iθ} ζ(1/2+it))| tolerated by [`hardy_z`].
pub const Z_RESIDUAL_TOLERANCE: f64 = 1e-9;

pub const SIGMA_MIN: f64 = -2.0;
pub const SIGMA_MAX: f64 = 4.0;
pub const T_ABS_MAX: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    EulerMaclaurin,
    RiemannSiegel,
    LaurentNearPole,
    OracleSeries,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    pub abs_error_bound: f64,
    pub method: EvalMethod,
}

impl EvalAccuracy {
    fn new(abs_error_bound: f64, method: EvalMethod) -> Self {
        Self {
            abs_error_bound,
            method,
        }
    }
}

fn validate(s: Complex64) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::OutOfValidatedRegion { re: s.re, im: s.im });
    }
    let distance = (s - 1.0).norm();
    if distance < POLE_GUARD {
        return Err(Error::PoleAtOne { distance });
    }
    if s.re < SIGMA_MIN || s.re > SIGMA_MAX || s.im.abs() > T_ABS_MAX {
        return Err(Error::OutOfValidatedRegion { re: s.re, im: s.im });
    }
    Ok(())
}

fn near_pole(s: Complex64) -> bool {
    (s - 1.0).norm() < laurent::LAURENT_RADIUS
}

fn on_line_large(s: Complex64) -> bool {
    s.re == 0.5 && s.im.abs() > RIEMANN_SIEGEL_SWITCH
}

/// ζ, ζ′ and ζ″ at `s` (entries past `order` are zero).
fn jet(s: Complex64, order: usize) -> ([Complex64; 3], EvalAccuracy) {
    if near_pole(s) {
        let (j, e) = laurent::zeta_jet(s);
        (
            [j.0[0], j.0[1], j.0[2] * 2.0],
            EvalAccuracy::new(e, EvalMethod::LaurentNearPole),
        )
    } else {
        let (j, e) = euler_maclaurin::zeta_jet(s, order);
        (
            [j.0[0], j.0[1], j.0[2] * 2.0],
            EvalAccuracy::new(e, EvalMethod::EulerMaclaurin),
        )
    }
}

fn finite_or_overflow(s: Complex64, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::OutOfValidatedRegion { re: s.re, im: s.im })
    }
}

/// ζ(s).
pub fn zeta(s: Complex64) -> Result<(Complex64, EvalAccuracy)> {
    validate(s)?;
    if on_line_large(s) {
        let t = s.im.abs();
        let (z, err) = riemann_siegel::hardy_z(t);
        let theta = gamma::theta_unchecked(t);
        let v = Complex64::from_polar(z, -theta);
        let v = if s.im < 0.0 { v.conj() } else { v };
        let theta_err = 4.0 * f64::EPSILON * theta.abs();
        return Ok((
            v,
            EvalAccuracy::new(err + z.abs() * theta_err, EvalMethod::RiemannSiegel),
        ));
    }
    let (j, acc) = jet(s, 0);
    Ok((finite_or_overflow(s, j[0])?, acc))
}

/// ζ′(s).
pub fn zeta_prime(s: Complex64) -> Result<(Complex64, EvalAccuracy)> {
    validate(s)?;
    let (j, acc) = jet(s, 1);
    Ok((finite_or_overflow(s, j[1])?, acc))
}

/// `[ζ(s), ζ′(s), ζ″(s)]` from one pass.
pub fn zeta_derivatives(s: Complex64) -> Result<([Complex64; 3], EvalAccuracy)> {
    validate(s)?;
    let (j, acc) = jet(s, 2);
    for v in j {
        finite_or_overflow(s, v)?;
    }
    Ok((j, acc))
}

/// ζ′/ζ(s).
pub fn log_deriv(s: Complex64) -> Result<(Complex64, EvalAccuracy)> {
    validate(s)?;
    if near_pole(s) {
        let v = laurent::log_deriv(s);
        let (_, e) = laurent::zeta_jet(s);
        // relative error of the two scaled series plus the tabulated tail
        let w = (s - 1.0).norm();
        let bound = v.norm() * (8.0 * f64::EPSILON) + e * w * w * (1.0 + v.norm());
        return Ok((v, EvalAccuracy::new(bound, EvalMethod::LaurentNearPole)));
    }
    let (j, acc) = jet(s, 1);
    let modulus = j[0].norm();
    if modulus <= NEAR_ZERO_GUARD {
        return Err(Error::NearZeroOfZeta { modulus });
    }
    let v = j[1] / j[0];
    let bound = acc.abs_error_bound * (1.0 + v.norm()) / modulus;
    Ok((
        finite_or_overflow(s, v)?,
        EvalAccuracy::new(bound, acc.method),
    ))
}

fn validate_offset(w: Complex64) -> Result<()> {
    if w.norm() < POLE_GUARD {
        return Err(Error::PoleAtOne { distance: w.norm() });
    }
    validate(1.0 + w)
}

/// ζ(1 + w), taking the offset directly. Near the pole this avoids the
/// rounding of 1 + w, which otherwise dominates once |w| ≲ 1e-4.
pub fn zeta_one_plus(w: Complex64) -> Result<(Complex64, EvalAccuracy)> {
    validate_offset(w)?;
    if w.norm() >= laurent::LAURENT_RADIUS {
        return zeta(1.0 + w);
    }
    let (j, e) = laurent::zeta_jet_offset(w);
    Ok((j.0[0], EvalAccuracy::new(e, EvalMethod::LaurentNearPole)))
}

/// ζ′/ζ(1 + w), taking the offset directly.
pub fn log_deriv_one_plus(w: Complex64) -> Result<(Complex64, EvalAccuracy)> {
    validate_offset(w)?;
    if w.norm() >= laurent::LAURENT_RADIUS {
        return log_deriv(1.0 + w);
    }
    let v = laurent::log_deriv_offset(w);
    let (_, e) = laurent::zeta_jet_offset(w);
    let r = w.norm();
    let bound = v.norm() * (8.0 * f64::EPSILON) + e * r * r * (1.0 + v.norm());
    Ok((v, EvalAccuracy::new(bound, EvalMethod::LaurentNearPole)))
}

/// (ζ′/ζ)′(s) = ζ″/ζ − (ζ′/ζ)².
pub fn log_deriv_prime(s: Complex64) -> Result<(Complex64, EvalAccuracy)> {
    validate(s)?;
    let (j, acc) = jet(s, 2);
    let modulus = j[0].norm();
    if modulus <= NEAR_ZERO_GUARD {
        return Err(Error::NearZeroOfZeta { modulus });
    }
    let ld = j[1] / j[0];
    let v = j[2] / j[0] - ld * ld;
    let bound = acc.abs_error_bound * (1.0 + 3.0 * ld.norm() + v.norm()) / modulus;
    Ok((
        finite_or_overflow(s, v)?,
        EvalAccuracy::new(bound, acc.method),
    ))
}

pub const THETA_MIN_T: f64 = 2.0;

/// Riemann–Siegel theta, θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π.
pub fn theta(t: f64) -> Result<f64> {
    if !(t >= THETA_MIN_T) {
        return Err(Error::DomainTooSmall {
            t,
            min: THETA_MIN_T,
        });
    }
    Ok(gamma::theta_unchecked(t))
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it).
pub fn hardy_z(t: f64) -> Result<f64> {
    hardy_z_with_bound(t).map(|(z, _)| z)
}

/// Z(t) together with an absolute error bound.
pub fn hardy_z_with_bound(t: f64) -> Result<(f64, f64)> {
    if !(t >= THETA_MIN_T) {
        return Err(Error::DomainTooSmall {
            t,
            min: THETA_MIN_T,
        });
    }
    if t > T_ABS_MAX {
        return Err(Error::OutOfValidatedRegion { re: 0.5, im: t });
    }
    if t > RIEMANN_SIEGEL_SWITCH {
        return Ok(riemann_siegel::hardy_z(t));
    }
    let s = Complex64::new(0.5, t);
    let (j, e) = euler_maclaurin::zeta_jet(s, 0);
    let theta = gamma::theta_unchecked(t);
    let rotated = Complex64::from_polar(1.0, theta) * j.0[0];
    let theta_err = 4.0 * f64::EPSILON * theta.abs() * rotated.norm();
    let residual = rotated.im.abs();
    if residual > Z_RESIDUAL_TOLERANCE {
        return Err(Error::ResidualTooLarge { t, residual });
    }
    Ok((rotated.re, e + theta_err))
}

/// The smooth part of the zero-counting function,
/// (T/2π) ln(T/2πe) + 7/8.
pub fn smooth_zero_count(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * (x.ln() - 1.0) + 0.875
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        let (z2, _) = zeta(c(2.0, 0.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14);
        let (z0, _) = zeta(c(0.0, 0.0)).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-14);
        let (d0, _) = zeta_prime(c(0.0, 0.0)).unwrap();
        assert!((d0.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn pole_guard_and_region() {
        assert!(matches!(
            zeta(c(1.0 + 1e-13, 0.0)),
            Err(Error::PoleAtOne { .. })
        ));
        assert!(matches!(
            zeta(c(5.0, 0.0)),
            Err(Error::OutOfValidatedRegion { .. })
        ));
        assert!(matches!(
            zeta(c(0.5, 2e6)),
            Err(Error::OutOfValidatedRegion { .. })
        ));
        assert!(matches!(
            zeta(c(f64::NAN, 0.0)),
            Err(Error::OutOfValidatedRegion { .. })
        ));
    }

    #[test]
    fn laurent_mode_near_pole() {
        let (v, acc) = zeta(c(1.2, 0.1)).unwrap();
        assert_eq!(acc.method, EvalMethod::LaurentNearPole);
        let (w, _) = euler_maclaurin::zeta_jet(c(1.2, 0.1), 0);
        assert!((v - w.0[0]).norm() < 1e-12);
    }

    #[test]
    fn log_deriv_at_two() {
        let (v, _) = log_deriv(c(2.0, 0.0)).unwrap();
        assert!((v.re + 0.569_960_993_094_532_8).abs() < 1e-13);
    }

    #[test]
    fn log_deriv_near_pole_relative_accuracy() {
        let d = 1e-3;
        let (v, _) = log_deriv(c(1.0 + d, 0.0)).unwrap();
        let expected = -1.0 / d + STIELTJES[0];
        assert!(((v.re - expected) / expected).abs() < 1e-3);
    }

    #[test]
    fn log_deriv_rejects_zero_of_zeta() {
        let err = log_deriv(c(0.5, 14.134_725_141_734_693)).unwrap_err();
        assert!(matches!(err, Error::NearZeroOfZeta { .. }));
    }

    #[test]
    fn theta_domain() {
        assert!(matches!(theta(1.5), Err(Error::DomainTooSmall { .. })));
        assert!(theta(2.0).is_ok());
    }

    #[test]
    fn riemann_siegel_matches_euler_maclaurin_above_switch() {
        for t in [1000.5, 1234.567, 2000.0, 3141.59, 5000.25] {
            let (rs, bound) = riemann_siegel::hardy_z(t);
            let (j, e) = euler_maclaurin::zeta_jet(c(0.5, t), 0);
            let em = (Complex64::from_polar(1.0, gamma::theta_unchecked(t)) * j.0[0]).re;
            assert!((rs - em).abs() <= bound + e + 1e-12, "t={t}: {rs} vs {em}");
        }
    }

    #[test]
    fn zeta_on_line_uses_rs_and_is_conjugate_symmetric() {
        let (a, acc) = zeta(c(0.5, 1500.0)).unwrap();
        let (b, _) = zeta(c(0.5, -1500.0)).unwrap();
        assert_eq!(acc.method, EvalMethod::RiemannSiegel);
        assert_eq!(a, b.conj());
    }

    #[test]
    fn smooth_count_at_hundred() {
        assert!((smooth_zero_count(100.0) - 29.002_343_587_325_35).abs() < 1e-10);
    }
}
