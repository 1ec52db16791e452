use serde::{Deserialize, Serialize};

/// Numeric value of a series or quadrature together with a rigorous
/// bound on the truncation error and the number of terms consumed.
///
/// The contract is `|value - true sum| <= tail_bound` whenever the
/// producing evaluator certified convergence. Monte Carlo estimators
/// reuse the slot for their standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

impl SeriesValue {
    pub fn new(value: f64, tail_bound: f64, terms_used: u64) -> Self {
        Self { value, tail_bound, terms_used }
    }

    /// An exactly-known value (zero tail).
    pub fn exact(value: f64) -> Self {
        Self { value, tail_bound: 0.0, terms_used: 0 }
    }

    /// Combine two independent contributions additively.
    pub fn add(self, other: SeriesValue) -> SeriesValue {
        SeriesValue {
            value: self.value + other.value,
            tail_bound: self.tail_bound + other.tail_bound,
            terms_used: self.terms_used + other.terms_used,
        }
    }

    /// Scale by a known constant; the tail bound scales with it.
    pub fn scale(self, c: f64) -> SeriesValue {
        SeriesValue {
            value: c * self.value,
            tail_bound: c.abs() * self.tail_bound,
            terms_used: self.terms_used,
        }
    }
}

/// Compensated (Kahan) accumulator; all multi-index summations use it
/// so that the reported tail bound is not polluted by rounding.
#[derive(Debug, Clone, Copy, Default)]
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
