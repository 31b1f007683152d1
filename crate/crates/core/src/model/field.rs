use num_complex::Complex64;

use super::fourier::Fourier;
use super::grid::SpatialGrid;
use crate::error::{Error, Result};

/// Complex amplitudes on a periodic grid, always normalized to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionField {
    grid: SpatialGrid,
    amplitudes: Vec<Complex64>,
    norm: f64,
}

impl WavefunctionField {
    /// Normalizes `amplitudes` on `grid`. Fails on length mismatch or a
    /// vanishing/non-finite norm.
    pub fn normalized(grid: SpatialGrid, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n_points() {
            return Err(Error::domain(
                "amplitudes",
                format!(
                    "length {} does not match grid size {}",
                    amplitudes.len(),
                    grid.n_points()
                ),
            ));
        }
        let raw = l2_norm(&amplitudes, grid.dx());
        if !(raw.is_finite() && raw > 0.0) {
            return Err(Error::domain(
                "amplitudes",
                format!("cannot normalize, norm = {raw}"),
            ));
        }
        let scale = 1.0 / raw;
        amplitudes.iter_mut().for_each(|z| *z *= scale);
        let norm = l2_norm(&amplitudes, grid.dx());
        Ok(WavefunctionField {
            grid,
            amplitudes,
            norm,
        })
    }

    pub fn from_real(grid: SpatialGrid, values: &[f64]) -> Result<Self> {
        Self::normalized(
            grid,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Wraps amplitudes produced by a unitary step without renormalizing;
    /// the cached norm is recomputed so drift stays visible.
    pub(crate) fn from_evolved(grid: SpatialGrid, amplitudes: Vec<Complex64>) -> Self {
        let norm = l2_norm(&amplitudes, grid.dx());
        WavefunctionField {
            grid,
            amplitudes,
            norm,
        }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `⟨self|other⟩` by grid quadrature.
    pub fn inner(&self, other: &WavefunctionField) -> Complex64 {
        debug_assert_eq!(self.amplitudes.len(), other.amplitudes.len());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.dx()
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sq(&self, other: &WavefunctionField) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn position_mean(&self) -> f64 {
        let dx = self.grid.dx();
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(j, z)| self.grid.x(j) * z.norm_sqr() * dx)
            .sum()
    }

    pub fn position_variance(&self) -> f64 {
        let mean = self.position_mean();
        let dx = self.grid.dx();
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(j, z)| (self.grid.x(j) - mean).powi(2) * z.norm_sqr() * dx)
            .sum()
    }

    /// Momentum-space weights `|ψ̃_b|²` summing to one, in FFT bin order.
    pub fn momentum_weights(&self, fourier: &Fourier) -> Vec<f64> {
        let mut spec = self.amplitudes.clone();
        fourier.forward(&mut spec);
        let total: f64 = spec.iter().map(|z| z.norm_sqr()).sum();
        spec.iter().map(|z| z.norm_sqr() / total).collect()
    }

    /// `⟨p⟩ = k̄ Σ k |ψ̃_k|²`.
    pub fn momentum_mean(&self, kbar: f64) -> f64 {
        let fourier = Fourier::new(self.grid.n_points());
        self.momentum_weights(&fourier)
            .iter()
            .enumerate()
            .map(|(b, w)| kbar * self.grid.wavenumber(b) * w)
            .sum()
    }

    /// Sign changes of the real part, ignoring samples below `rel_floor`
    /// times the peak magnitude.
    pub fn node_count(&self, rel_floor: f64) -> usize {
        let peak = self
            .amplitudes
            .iter()
            .map(|z| z.re.abs())
            .fold(0.0, f64::max);
        let mut last_sign = 0.0;
        let mut nodes = 0;
        for z in &self.amplitudes {
            if z.re.abs() <= rel_floor * peak {
                continue;
            }
            let s = z.re.signum();
            if last_sign != 0.0 && s != last_sign {
                nodes += 1;
            }
            last_sign = s;
        }
        nodes
    }

    /// Multiplies by a global phase so the largest-magnitude sample is real
    /// and positive.
    pub fn fix_phase(&mut self) {
        if let Some(peak) = self
            .amplitudes
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
        {
            if peak.norm() > 0.0 {
                let rot = peak.conj() / peak.norm();
                self.amplitudes.iter_mut().for_each(|z| *z *= rot);
            }
        }
    }
}

pub(crate) fn l2_norm(amplitudes: &[Complex64], dx: f64) -> f64 {
    (amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx).sqrt()
}
