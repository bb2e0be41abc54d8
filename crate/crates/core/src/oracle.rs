//! Slow, independent reference evaluators.
//!
//! Nothing here calls into [`crate::zeta_eval`]: ζ uses Borwein's
//! alternating-series acceleration of the Dirichlet eta function, and the
//! theta function uses a Lanczos log-gamma. These exist to cross-check the
//! main path in tests and in the examples.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on series length; keeps the Borwein weights inside f64 range.
pub const MAX_TERMS: usize = 380;

/// Double-double style accumulator (TwoSum with a running error term).
#[derive(Default, Clone, Copy)]
struct TwoSumAcc {
    hi: f64,
    lo: f64,
}

impl TwoSumAcc {
    fn add(&mut self, v: f64) {
        let s = self.hi + v;
        let bp = s - self.hi;
        let err = (self.hi - (s - bp)) + (v - bp);
        self.hi = s;
        self.lo += err;
    }

    fn value(&self) -> f64 {
        self.hi + self.lo
    }
}

fn terms_needed(s: Complex64, target_error: f64) -> Result<usize> {
    let t = s.im.abs();
    let denom = (Complex64::new(1.0, 0.0) - Complex64::new(2.0, 0.0).powc(1.0 - s)).norm();
    if denom < 1e-8 {
        return Err(Error::ConvergenceFailure(format!(
            "1 - 2^(1-s) vanishes at s = {s}"
        )));
    }
    // 3 (1+2|t|) e^{π|t|/2} (1+|s|)^{3/2} / ((3+√8)^n |1-2^{1-s}|) ≤ target
    let log_num = (3.0 * (1.0 + 2.0 * t)).ln()
        + PI * t / 2.0
        + 1.5 * (1.0 + s.norm()).ln()
        - denom.ln()
        - target_error.ln();
    let n = (log_num / (3.0 + 8f64.sqrt()).ln()).ceil().max(1.0) as usize + 10;
    if n > MAX_TERMS {
        return Err(Error::ConvergenceFailure(format!(
            "{n} terms needed for target {target_error:e} at s = {s}"
        )));
    }
    Ok(n)
}

/// ζ(s) to within `target_error` for Re s > −1, |Im s| ≤ 200, s ≠ 1.
pub fn oracle_zeta(s: Complex64, target_error: f64) -> Result<Complex64> {
    if !(s.re > -1.0) || s.im.abs() > 200.0 || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::OutOfValidatedRegion { re: s.re, im: s.im });
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::PoleAtOne {
            distance: (s - 1.0).norm(),
        });
    }
    let n = terms_needed(s, target_error)?;

    // d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 0.0;
    for i in 0..=n {
        if i > 0 {
            let (nf, i_f) = (n as f64, i as f64);
            term *= 4.0 * (nf + i_f - 1.0) * (nf - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        }
        acc += term;
        d.push(acc);
    }
    let dn = d[n];

    let mut re = TwoSumAcc::default();
    let mut im = TwoSumAcc::default();
    for k in 0..n {
        let weight = (d[k] - dn) / dn;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let p = (-s * ((k + 1) as f64).ln()).exp() * (sign * weight);
        re.add(p.re);
        im.add(p.im);
    }
    let eta = -Complex64::new(re.value(), im.value());
    let zeta = eta / (1.0 - Complex64::new(2.0, 0.0).powc(1.0 - s));
    if !zeta.re.is_finite() || !zeta.im.is_finite() {
        return Err(Error::ConvergenceFailure(format!("non-finite result at {s}")));
    }
    Ok(zeta)
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos ln Γ(z) for Re z ≥ 1/2.
pub fn oracle_ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// θ(t) via the Lanczos log-gamma.
pub fn oracle_theta(t: f64) -> f64 {
    oracle_ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// Z(t) from the oracle ζ and oracle θ (t ≤ 200).
pub fn oracle_hardy_z(t: f64) -> Result<f64> {
    let z = oracle_zeta(Complex64::new(0.5, t), 1e-13)?;
    Ok((Complex64::from_polar(1.0, oracle_theta(t)) * z).re)
}

/// Bisection on the oracle Z for a sign change in [lo, hi], to width `tol`.
pub fn oracle_bisect_zero(mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut f_lo = oracle_hardy_z(lo)?;
    let f_hi = oracle_hardy_z(hi)?;
    if (f_lo >= 0.0) == (f_hi >= 0.0) {
        return Err(Error::LostBracket { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = oracle_hardy_z(mid)?;
        if (f_mid >= 0.0) == (f_lo >= 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two() {
        let v = oracle_zeta(Complex64::new(2.0, 0.0), 1e-13).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn zeta_minus_half_via_functional_equation() {
        // ζ(-1/2) = 2^{-1/2} π^{-3/2} sin(-π/4) Γ(3/2) ζ(3/2)
        let z32 = oracle_zeta(Complex64::new(1.5, 0.0), 1e-14).unwrap().re;
        let gamma_32 = 0.5 * PI.sqrt();
        let reflected = 2f64.powf(-0.5) * PI.powf(-1.5) * (-PI / 4.0).sin() * gamma_32 * z32;
        let direct = oracle_zeta(Complex64::new(-0.5, 0.0), 1e-13).unwrap().re;
        assert!((direct - reflected).abs() < 1e-12);
        assert!((direct + 0.207_886_224_977_354_6).abs() < 1e-12);
    }

    #[test]
    fn refuses_outside_region() {
        assert!(oracle_zeta(Complex64::new(-1.5, 0.0), 1e-12).is_err());
        assert!(oracle_zeta(Complex64::new(0.5, 250.0), 1e-12).is_err());
        assert!(matches!(
            oracle_zeta(Complex64::new(0.5, 200.0), 1e-300),
            Err(Error::ConvergenceFailure(_))
        ));
    }

    #[test]
    fn lanczos_gamma_matches_factorial() {
        let v = oracle_ln_gamma(Complex64::new(6.0, 0.0));
        assert!((v.re - 120f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn first_zero_by_bisection() {
        let g = oracle_bisect_zero(14.0, 14.3, 1e-11).unwrap();
        assert!((g - 14.134_725_141_734_693).abs() < 1e-10);
    }
}
