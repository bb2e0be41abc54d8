//! Minimal double-double arithmetic for phase computations, where the
//! argument θ(t) − t ln n is large but only its residue mod 2π matters.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub(crate) const LN_2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};
pub(crate) const TWO_PI: Dd = Dd {
    hi: 2.0 * std::f64::consts::PI,
    lo: 2.449_293_598_294_706_4e-16,
};
pub(crate) const PI_OVER_8: Dd = Dd {
    hi: std::f64::consts::PI / 8.0,
    lo: 1.530_808_498_934_191_5e-17,
};

impl Dd {
    pub const fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn scale_pow2(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// Natural logarithm of a positive value.
    pub fn ln(self) -> Dd {
        let mut k = self.hi.log2().round() as i32;
        let mut m = self.scale_pow2(-k);
        if m.hi > std::f64::consts::SQRT_2 {
            m = m.scale_pow2(-1);
            k += 1;
        } else if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.scale_pow2(1);
            k -= 1;
        }
        // ln m = 2 atanh z, z = (m − 1)/(m + 1), |z| ≤ 0.172.
        let one = Dd::new(1.0);
        let z = (m - one).div(m + one);
        let z2 = z * z;
        let mut power = z;
        let mut sum = z;
        for j in 1..=24 {
            power = power * z2;
            let term = power.div(Dd::new((2 * j + 1) as f64));
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        sum * Dd::new(2.0) + LN_2 * Dd::new(k as f64)
    }

    /// Residue in [−π, π] modulo 2π.
    pub fn rem_two_pi(self) -> Dd {
        let k = (self.hi / TWO_PI.hi).round();
        self - TWO_PI * Dd::new(k)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_integers_matches_reference() {
        // ln 10 and ln 399 to ~32 digits (mpmath).
        let l10 = Dd::new(10.0).ln();
        assert_eq!(l10.hi, 2.302_585_092_994_046);
        assert!((l10.lo - -2.170_756_223_382_249_2e-16).abs() < 1e-30);
        let l399 = Dd::new(399.0).ln();
        let back = l399 - Dd::new(3.0).ln() - Dd::new(7.0).ln() - Dd::new(19.0).ln();
        assert!(back.to_f64().abs() < 1e-30);
    }

    #[test]
    fn two_pi_reduction_is_exact_enough() {
        let x = TWO_PI * Dd::new(12_345.0) + Dd::new(0.25);
        assert!((x.rem_two_pi().to_f64() - 0.25).abs() < 1e-27);
    }
}
