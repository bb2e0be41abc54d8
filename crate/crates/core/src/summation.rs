//! Compensated accumulation.
//!
//! Sums are accumulated with Neumaier's variant of Kahan summation, which
//! stays exact-to-rounding even when an addend is larger than the running
//! total. Reductions in this crate are always performed sequentially in a
//! fixed order so results do not depend on thread count.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Component-wise compensated sum of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Compensated sum of a slice in index order.
pub fn sum_ordered(values: &[f64]) -> f64 {
    values.iter().copied().collect::<NeumaierSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_addends_lost_by_naive_sum() {
        let values = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = values.iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(sum_ordered(&values), 2.0);
    }

    #[test]
    fn harmonic_partial_sum_matches_reverse_order() {
        let forward: Vec<f64> = (1..=100_000).map(|n| 1.0 / n as f64).collect();
        let mut backward = forward.clone();
        backward.reverse();
        let a = sum_ordered(&forward);
        let b = sum_ordered(&backward);
        assert!((a - b).abs() <= 2.0 * f64::EPSILON * a);
    }

    #[test]
    fn complex_sum_tracks_components_independently() {
        let mut acc = ComplexSum::new();
        for k in 0..1000 {
            acc.add(Complex64::new(0.1, -0.1 * k as f64));
        }
        let v = acc.value();
        assert!((v.re - 100.0).abs() < 1e-12);
        assert!((v.im + 49_950.0).abs() < 1e-9);
    }
}
