//! Second-order Taylor jets in one complex variable.
//!
//! A `Jet` holds `[f(s), f'(s), f''(s)/2]`; arithmetic propagates the
//! truncated Taylor expansion so ζ, ζ′ and ζ″ come out of a single pass.

use std::ops::{Add, AddAssign, Mul};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet(pub [Complex64; 3]);

impl Jet {
    pub const ZERO: Jet = Jet([Complex64::new(0.0, 0.0); 3]);

    /// The jet of the identity shifted by `c`: `s + c`.
    pub fn variable(value: Complex64) -> Self {
        Jet([value, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
    }

    /// Jet of `x^{-s}` for real `ln_x`, given the value `x^{-s}` itself.
    pub fn power(value: Complex64, ln_x: f64) -> Self {
        Jet([value, value * -ln_x, value * (0.5 * ln_x * ln_x)])
    }

    /// Jet of `1/(w + ε)`.
    pub fn reciprocal_of_variable(w: Complex64) -> Self {
        let r = w.inv();
        Jet([r, -r * r, r * r * r])
    }

    pub fn scale(self, k: f64) -> Self {
        Jet([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    pub fn max_norm(&self, order: usize) -> f64 {
        self.0[..=order].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = rhs.0;
        Jet([a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0])
    }
}
