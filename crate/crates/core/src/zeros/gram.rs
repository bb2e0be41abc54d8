use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::zeta_eval::{self, gamma};

const MAX_NEWTON: usize = 50;

/// Principal branch of Lambert W for x ≥ −1/e (Halley iteration).
fn lambert_w0(x: f64) -> f64 {
    let mut w = if x < 1.0 {
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0
    } else {
        x.ln() - x.ln().ln().max(0.0)
    };
    for _ in 0..30 {
        let ew = w.exp();
        let f = w * ew - x;
        let denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        if denom == 0.0 {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(1.0) {
            break;
        }
    }
    w
}

/// The n-th Gram point: the solution of θ(g_n) = nπ on the increasing branch.
pub fn gram_point(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(Error::NoConvergence { n });
    }
    let target = n as f64 * PI;
    let w = lambert_w0((8.0 * n as f64 + 1.0) / (8.0 * E));
    let mut t = 2.0 * PI * (1.0 + w).exp();
    let tol = 1e-10_f64.max(4.0 * f64::EPSILON * target.abs());
    for _ in 0..MAX_NEWTON {
        let f = zeta_eval::theta(t)? - target;
        let step = f / gamma::theta_prime(t);
        t = (t - step).max(7.0);
        if f.abs() <= tol && step.abs() <= 1e-9 * t.max(1.0) {
            return Ok(t);
        }
    }
    let f = zeta_eval::theta(t)? - target;
    if f.abs() <= tol {
        Ok(t)
    } else {
        Err(Error::NoConvergence { n })
    }
}

/// Index of the largest Gram point not exceeding `t` (−2 if below g₋₁).
pub fn gram_index_below(t: f64) -> Result<i64> {
    if t < 9.0 {
        return Ok(-2);
    }
    let mut n = (zeta_eval::theta(t)? / PI).floor() as i64;
    while n >= -1 && gram_point(n)? > t {
        n -= 1;
    }
    while gram_point(n + 1)? <= t {
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambert_w_identities() {
        for x in [-0.3, -0.1, 0.0, 0.5, 1.0, 10.0, 1e4] {
            let w = lambert_w0(x);
            assert!((w * w.exp() - x).abs() < 1e-12 * x.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn first_gram_points() {
        assert!((gram_point(-1).unwrap() - 9.666_908_056_13).abs() < 1e-9);
        assert!((gram_point(0).unwrap() - 17.845_599_540_410_86).abs() < 1e-10);
        assert!((gram_point(1).unwrap() - 23.170_282_701_246_31).abs() < 1e-10);
    }

    #[test]
    fn residual_and_ordering() {
        let mut prev = 0.0;
        for n in [-1, 0, 1, 2, 10, 100, 1000, 10_000, 100_000] {
            let g = gram_point(n).unwrap();
            let r = zeta_eval::theta(g).unwrap() - n as f64 * PI;
            assert!(r.abs() <= 1e-10_f64.max(4.0 * f64::EPSILON * n as f64 * PI), "n={n}: {r}");
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn index_below() {
        assert_eq!(gram_index_below(5.0).unwrap(), -2);
        assert_eq!(gram_index_below(17.0).unwrap(), -1);
        assert_eq!(gram_index_below(17.9).unwrap(), 0);
        let g = gram_point(500).unwrap();
        assert_eq!(gram_index_below(g + 1e-6).unwrap(), 500);
        assert_eq!(gram_index_below(g - 1e-6).unwrap(), 499);
    }
}
