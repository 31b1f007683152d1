use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Forward/inverse FFT pair of a fixed length. The inverse is normalized so
/// that `inverse(forward(v)) == v`.
#[derive(Clone)]
pub struct Fourier {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    len: usize,
}

impl Fourier {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fourier {
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.forward.process(data);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse.process(data);
        let scale = 1.0 / self.len as f64;
        data.iter_mut().for_each(|z| *z *= scale);
    }

    /// Inverse transform without the `1/N` factor, i.e. the plain sum
    /// `Σ_b c_b e^{2πi b j/N}`.
    pub fn synthesize(&self, data: &mut [Complex64]) {
        self.inverse.process(data);
    }
}

impl fmt::Debug for Fourier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fourier").field("len", &self.len).finish()
    }
}
