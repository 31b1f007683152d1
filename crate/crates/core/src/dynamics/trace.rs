use num_complex::Complex64;

use crate::model::LatticeParams;

/// Samples of `A(t) = ⟨ψ(0)|ψ(t)⟩` with the ground-state phase
/// `e^{−iE_ref t/k̄}` factored out.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrelationTrace {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    pub params: LatticeParams,
}

impl AutocorrelationTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `|A(t)|²` at every sample.
    pub fn abs_sq(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Spacing of the first two samples, if there are two.
    pub fn sample_spacing(&self) -> Option<f64> {
        match self.times.as_slice() {
            [t0, t1, ..] => Some(t1 - t0),
            _ => None,
        }
    }
}

/// `n + 1` equally spaced instants `0, dt, …, n·dt`.
pub fn uniform_times(dt: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 * dt).collect()
}
