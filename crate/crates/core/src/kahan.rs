//! Compensated floating-point accumulation.

use std::ops::AddAssign;

/// Kahan-compensated running sum. The compensation term carries the low-order
/// bits that a plain `f64` accumulator would drop, which keeps long series
/// sums (hundreds of thousands of terms) accurate to a few ulps.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl AddAssign<f64> for KahanSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}
