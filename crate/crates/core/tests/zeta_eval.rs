use proptest::prelude::*;
use zeta_moments::oracle::{oracle_ln_gamma, oracle_zeta};
use zeta_moments::zeta_eval::{
    hardy_z, log_deriv, log_deriv_one_plus, theta, zeta, zeta_one_plus, zeta_prime, POLE_GUARD,
};
use zeta_moments::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn validated_s() -> impl Strategy<Value = Complex64> {
    (-2.0f64..4.0, -1e4f64..1e4)
        .prop_map(|(re, im)| c(re, im))
        .prop_filter("away from the pole", |s| (s - 1.0).norm() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn reflection(s in validated_s()) {
        let (a, _) = zeta(s).unwrap();
        let (b, _) = zeta(s.conj()).unwrap();
        prop_assert!((a.conj() - b).norm() <= 1e-12 * a.norm().max(1.0), "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn z_is_real(t in 2.0f64..1e3) {
        let (v, _) = zeta(c(0.5, t)).unwrap();
        let rotated = Complex64::from_polar(1.0, theta(t).unwrap()) * v;
        prop_assert!(rotated.im.abs() <= 1e-9, "t = {t}: {}", rotated.im);
        prop_assert!((rotated.re - hardy_z(t).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn oracle_agreement(re in -0.9f64..4.0, im in -100.0f64..100.0) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 1e-3);
        let (v, acc) = zeta(s).unwrap();
        let o = oracle_zeta(s, 1e-12).unwrap();
        // the oracle's own target is added to the claimed bound
        prop_assert!((v - o).norm() <= acc.abs_error_bound + 1e-12 * o.norm().max(1.0),
            "s = {s}: |diff| = {:e}, bound {:e}", (v - o).norm(), acc.abs_error_bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivative_matches_differences(re in -1.5f64..3.5, im in -500.0f64..500.0) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.1);
        let h = 1e-5;
        let (p, _) = zeta(s + h).unwrap();
        let (m, _) = zeta(s - h).unwrap();
        let fd = (p - m) / (2.0 * h);
        let (d, _) = zeta_prime(s).unwrap();
        prop_assert!((fd - d).norm() <= 1e-6 * d.norm().max(1.0), "{fd} vs {d}");
    }

    #[test]
    fn log_deriv_by_offset_matches(re in -0.4f64..0.4, im in -0.4f64..0.4) {
        let w = c(re, im);
        prop_assume!(w.norm() > 1e-2 && w.norm() < 0.45);
        let (a, _) = log_deriv(1.0 + w).unwrap();
        let (b, _) = log_deriv_one_plus(w).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
        let (za, _) = zeta(1.0 + w).unwrap();
        let (zb, _) = zeta_one_plus(w).unwrap();
        prop_assert!((za - zb).norm() <= 1e-12 * za.norm());
    }
}

/// log |ζ| ≤ log C + 0.16 log t, fitted C over a log-uniform sample.
#[test]
fn lindelof_envelope() {
    let mut worst: f64 = 0.0;
    for sigma in [0.5, 0.75, 1.0] {
        for k in 0..=400 {
            let t = 10f64 * 1e3f64.powf(k as f64 / 400.0);
            let (v, _) = zeta(c(sigma, t)).unwrap();
            worst = worst.max(v.norm() / t.powf(0.16));
        }
    }
    assert!(worst <= 10.0, "fitted C = {worst}");
}

/// ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s) in the strip, with Γ from
/// the Lanczos oracle.
#[test]
fn functional_equation_in_strip() {
    for (re, im) in [(0.2, 10.0), (0.3, 37.5), (0.7, 21.0), (0.9, 60.0), (0.5, 5.0), (0.1, 90.0)] {
        let s = c(re, im);
        let chi = (s * 2f64.ln() + (s - 1.0) * std::f64::consts::PI.ln()).exp()
            * (s * std::f64::consts::FRAC_PI_2).sin()
            * oracle_ln_gamma(1.0 - s).exp();
        let (lhs, _) = zeta(s).unwrap();
        let (rhs, _) = zeta(1.0 - s).unwrap();
        let rhs = chi * rhs;
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0), "s = {s}: {lhs} vs {rhs}");
    }
}

#[test]
fn known_values() {
    let (v, _) = zeta(c(2.0, 0.0)).unwrap();
    assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    let (v, _) = zeta(c(-0.5, 0.0)).unwrap();
    assert!((v.re + 0.207_886_224_977_354_6).abs() < 1e-10);
    let (a, _) = zeta(c(0.5, 25.0)).unwrap();
    let o = oracle_zeta(c(0.5, 25.0), 1e-13).unwrap();
    assert!((a - o).norm() < 1e-10);
    assert!(zeta(c(1.0, 0.0)).is_err());
    assert!(zeta_one_plus(c(POLE_GUARD / 2.0, 0.0)).is_err());
}

#[test]
fn theta_increasing() {
    let mut prev = theta(20.0).unwrap();
    for k in 1..2000 {
        let t = 20.0 + k as f64 * 0.5;
        let th = theta(t).unwrap();
        assert!(th > prev);
        prev = th;
    }
}
