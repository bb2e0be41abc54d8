//! Euler–Maclaurin evaluation of ζ and its first two derivatives.
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R_M
//!
//! with N = ⌈|t|/2⌉ + 20 and M = 12. The remainder satisfies
//! |R_M| ≤ |s+2M+1|/(σ+2M+1) · |T_{M+1}| where T_{M+1} is the first omitted
//! correction. Derivatives are carried through as Taylor jets.

use num_complex::Complex64;

use super::jet::Jet;

pub(crate) const CORRECTION_TERMS: usize = 12;

/// B_{2k} as exact rationals, k = 1..=13.
const BERNOULLI_2K: [(f64, f64); 13] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
];

/// B_{2k}/(2k)! for k = 1..=13.
fn bernoulli_over_factorial(k: usize) -> f64 {
    let (num, den) = BERNOULLI_2K[k - 1];
    let mut fact = 1.0;
    for j in 2..=(2 * k) {
        fact *= j as f64;
    }
    num / den / fact
}

pub(crate) fn main_sum_length(t: f64) -> usize {
    (t.abs() / 2.0).ceil() as usize + 20
}

/// Evaluates the jet of ζ at `s` up to derivative `order` (0, 1 or 2).
/// Returns the jet and an absolute error bound covering truncation and
/// first-order rounding in the main sum.
pub(crate) fn zeta_jet(s: Complex64, order: usize) -> (Jet, f64) {
    debug_assert!(order <= 2);
    let sigma = s.re;
    let t = s.im;
    let n_terms = main_sum_length(t);

    // Main sum in ascending n with Neumaier compensation per component.
    let mut acc = [[0.0f64; 4]; 3];
    let mut magnitude_sum = 0.0;
    let mut phase_weighted = 0.0;
    for n in 1..n_terms {
        let ln_n = (n as f64).ln();
        let mag = (-sigma * ln_n).exp();
        let (sin, cos) = (t * ln_n).sin_cos();
        let term = Complex64::new(mag * cos, -mag * sin);
        magnitude_sum += mag;
        phase_weighted += mag * t.abs() * ln_n;
        add_compensated(&mut acc[0], term);
        if order >= 1 {
            add_compensated(&mut acc[1], term * -ln_n);
        }
        if order >= 2 {
            add_compensated(&mut acc[2], term * (0.5 * ln_n * ln_n));
        }
    }
    let mut jet = Jet([finish(&acc[0]), finish(&acc[1]), finish(&acc[2])]);

    let big_n = n_terms as f64;
    let ln_big_n = big_n.ln();
    let n_pow_minus_s = (-s * ln_big_n).exp();
    let n_power = Jet::power(n_pow_minus_s, ln_big_n);

    // N^{1-s}/(s-1) + N^{-s}/2
    jet += n_power.scale(big_n) * Jet::reciprocal_of_variable(s - 1.0);
    jet += n_power.scale(0.5);

    // Bernoulli corrections; rising holds s(s+1)…(s+2k-2) as a jet.
    let mut rising = Jet::variable(s);
    let mut inv_pow = 1.0 / big_n;
    let inv_n2 = inv_pow * inv_pow;
    let mut omitted = Jet::ZERO;
    for k in 1..=CORRECTION_TERMS + 1 {
        if k > 1 {
            let j = (2 * k - 3) as f64;
            rising = rising * Jet::variable(s + j) * Jet::variable(s + j + 1.0);
            inv_pow *= inv_n2;
        }
        let term = (rising * n_power).scale(bernoulli_over_factorial(k) * inv_pow);
        if k <= CORRECTION_TERMS {
            jet += term;
        } else {
            omitted = term;
        }
    }

    let m = CORRECTION_TERMS as f64;
    let remainder_factor = (s + 2.0 * m + 1.0).norm() / (sigma + 2.0 * m + 1.0);
    // derivative components of the remainder are bounded with a log N margin
    let truncation = remainder_factor * omitted.max_norm(order) * (1.0 + ln_big_n).powi(order as i32);
    let rounding = f64::EPSILON * (3.0 * magnitude_sum + phase_weighted) * (1.0 + ln_big_n).powi(order as i32);
    (jet, 2.0 * truncation + rounding)
}

#[inline]
fn add_compensated(acc: &mut [f64; 4], z: Complex64) {
    let [re_sum, re_comp, im_sum, im_comp] = acc;
    neumaier(re_sum, re_comp, z.re);
    neumaier(im_sum, im_comp, z.im);
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}

fn finish(acc: &[f64; 4]) -> Complex64 {
    Complex64::new(acc[0] + acc[1], acc[2] + acc[3])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_ratios_match_known_values() {
        assert!((bernoulli_over_factorial(1) - 1.0 / 12.0).abs() < 1e-17);
        assert!((bernoulli_over_factorial(2) + 1.0 / 720.0).abs() < 1e-18);
        assert!((bernoulli_over_factorial(3) - 1.0 / 30240.0).abs() < 1e-19);
    }

    #[test]
    fn zeta_two_and_derivative() {
        let (jet, err) = zeta_jet(Complex64::new(2.0, 0.0), 2);
        assert!((jet.0[0].re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
        assert!((jet.0[1].re + 0.937_548_254_315_843_8).abs() < 1e-13);
        // zeta''(2) = 1.98928023429890...
        assert!((2.0 * jet.0[2].re - 1.989_280_234_298_9).abs() < 1e-12);
        assert!(err < 1e-13);
    }

    #[test]
    fn truncation_bound_shrinks_with_height_scaled_sum() {
        let (_, e1) = zeta_jet(Complex64::new(0.5, 100.0), 0);
        let (_, e2) = zeta_jet(Complex64::new(0.5, 1000.0), 0);
        assert!(e1 < 1e-11);
        assert!(e2 < 1e-10);
    }
}
