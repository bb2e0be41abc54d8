//! Stirling-series log-gamma and the Riemann–Siegel theta function.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{Dd, PI_OVER_8, TWO_PI};

/// B_{2k} / (2k(2k-1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT_TARGET: f64 = 15.0;

/// Principal branch of ln Γ(z) for Re z > 0.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let mut w = z;
    let mut shift_log = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_TARGET {
        shift_log += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift_log
}

/// Coefficients of the large-t expansion
/// θ(t) = t/2 ln(t/2π) - t/2 - π/8 + Σ c_k t^{1-2k}.
const THETA_SERIES: [f64; 6] = [
    1.0 / 48.0,
    7.0 / 5760.0,
    31.0 / 80640.0,
    127.0 / 430080.0,
    511.0 / 1216512.0,
    // (1 - 2^{-11}) |B_12| / (24 * 11)
    (1.0 - 1.0 / 2048.0) * (691.0 / 2730.0) / 264.0,
];

const THETA_SERIES_FROM: f64 = 20.0;

/// θ(t) without domain checks. Within an ulp or so of θ for t ≥ 2.
pub(crate) fn theta_unchecked(t: f64) -> f64 {
    if t >= THETA_SERIES_FROM {
        theta_dd(t).to_f64()
    } else {
        ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
    }
}

fn theta_series_correction(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in THETA_SERIES {
        corr += c * p;
        p *= inv2;
    }
    corr
}

/// θ(t) in double-double for t ≥ 20, for phase reduction modulo 2π.
pub(crate) fn theta_dd(t: f64) -> Dd {
    debug_assert!(t >= THETA_SERIES_FROM);
    let half_t = Dd::new(0.5 * t);
    let log_term = Dd::new(t).div(TWO_PI).ln();
    half_t * log_term - half_t - PI_OVER_8 + Dd::new(theta_series_correction(t))
}

/// θ′(t), leading terms; used for Newton steps only.
pub(crate) fn theta_prime(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_at_integers_and_half() {
        assert!(ln_gamma(Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let half = ln_gamma(Complex64::new(0.5, 0.0));
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
        let ten = ln_gamma(Complex64::new(10.0, 0.0));
        assert!((ten.re - 362_880f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn series_and_gamma_paths_agree_at_switch() {
        for t in [20.0, 25.0, 40.0] {
            let series = theta_unchecked(t);
            let direct = ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln();
            assert!((series - direct).abs() < 1e-13, "t={t}: {series} vs {direct}");
        }
    }
}
