//! Laurent expansion of ζ about its pole:
//! ζ(s) = 1/(s-1) + Σ_{n≥0} (-1)^n γ_n (s-1)^n / n!

use num_complex::Complex64;

use super::jet::Jet;

/// Stieltjes constants γ_0 … γ_10, 20 significant digits.
pub const STIELTJES: [f64; 11] = [
    0.577_215_664_901_532_860_61,
    -0.072_815_845_483_676_724_861,
    -0.009_690_363_192_872_318_484_5,
    0.002_053_834_420_303_345_866_2,
    0.002_325_370_065_467_300_057_5,
    0.000_793_323_817_301_062_701_75,
    -0.000_238_769_345_430_199_609_87,
    -0.000_527_289_567_057_751_046_07,
    -0.000_352_123_353_803_039_509_60,
    -0.000_034_394_774_418_088_048_178,
    0.000_205_332_814_909_064_794_68,
];

/// |γ_11|, used only for the truncation bound.
const GAMMA_11_ABS: f64 = 2.701_844_395_439_035e-4;

pub(crate) const LAURENT_RADIUS: f64 = 0.5;

/// Coefficients a_n = (-1)^n γ_n / n! of the regular part.
fn regular_coefficients() -> [f64; 11] {
    let mut out = [0.0; 11];
    let mut fact = 1.0;
    for (n, g) in STIELTJES.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        out[n] = sign * g / fact;
    }
    out
}

/// Value and first two Taylor coefficients of the regular part q(w) at w.
fn regular_jet(w: Complex64) -> [Complex64; 3] {
    let a = regular_coefficients();
    let zero = Complex64::new(0.0, 0.0);
    let (mut q, mut dq, mut d2q) = (zero, zero, zero);
    for &c in a.iter().rev() {
        d2q = d2q * w + dq;
        dq = dq * w + q;
        q = q * w + c;
    }
    [q, dq, d2q]
}

/// Jet of ζ at s = 1 + w using the Laurent series.
pub(crate) fn zeta_jet(s: Complex64) -> (Jet, f64) {
    zeta_jet_offset(s - 1.0)
}

/// Jet of ζ at 1 + w, taking the offset itself so that small w keeps
/// its full relative precision.
pub(crate) fn zeta_jet_offset(w: Complex64) -> (Jet, f64) {
    let reg = Jet(regular_jet(w));
    let jet = Jet::reciprocal_of_variable(w) + reg;
    let r = w.norm();
    let fact11 = 39_916_800.0;
    let truncation = 2.0 * GAMMA_11_ABS / fact11 * r.powi(10) * (r + 11.0);
    let rounding = 4.0 * f64::EPSILON * (1.0 / r + 1.0 / (r * r) + 1.0 / (r * r * r));
    (jet, truncation + rounding)
}

/// ζ′/ζ near the pole from the scaled forms w·ζ = 1 + w q(w) and
/// w²·ζ′ = -1 + w² q′(w), which stay bounded as w → 0.
pub(crate) fn log_deriv(s: Complex64) -> Complex64 {
    log_deriv_offset(s - 1.0)
}

pub(crate) fn log_deriv_offset(w: Complex64) -> Complex64 {
    let [q, dq, _] = regular_jet(w);
    let scaled_zeta = 1.0 + w * q;
    let scaled_prime = -1.0 + w * w * dq;
    scaled_prime / (scaled_zeta * w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_deriv_just_right_of_pole() {
        let d = 1e-3;
        let v = log_deriv(Complex64::new(1.0 + d, 0.0));
        // -1/d + γ0 + O(d); next order is (-γ0² - 2γ1) d
        let expected = -1.0 / d + STIELTJES[0] - (STIELTJES[0].powi(2) + 2.0 * STIELTJES[1]) * d;
        assert!((v.re - expected).abs() < 1e-6, "{v} vs {expected}");
    }

    #[test]
    fn series_matches_euler_maclaurin_on_switch_circle() {
        for k in 0..16 {
            let phi = k as f64 * std::f64::consts::PI / 8.0;
            let s = Complex64::new(1.0 + 0.5 * phi.cos(), 0.5 * phi.sin());
            let (lj, le) = zeta_jet(s);
            let (ej, ee) = super::super::euler_maclaurin::zeta_jet(s, 1);
            assert!((lj.0[0] - ej.0[0]).norm() < 1e-12 + le + ee);
            assert!((lj.0[1] - ej.0[1]).norm() < 1e-11);
        }
    }
}
