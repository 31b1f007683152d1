use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform periodic grid covering `n_wells` wells of `−V₀ cos(2x)`.
///
/// The domain is `[−Lπ/2, Lπ/2)` so that a well bottom sits at `x = 0` and
/// `x ↦ −x` maps grid points onto grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    n_points: usize,
    n_wells: usize,
}

impl SpatialGrid {
    pub const DEFAULT_POINTS: usize = 1024;
    pub const DEFAULT_WELLS: usize = 2;

    pub fn new(n_points: usize, n_wells: usize) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::domain(
                "n_points",
                format!("must be a power of two >= 8, got {n_points}"),
            ));
        }
        if n_wells < 2 || !n_wells.is_multiple_of(2) {
            return Err(Error::domain(
                "n_wells",
                format!("must be even and >= 2, got {n_wells}"),
            ));
        }
        if !n_points.is_multiple_of(n_wells) {
            return Err(Error::domain(
                "n_wells",
                format!("must divide n_points ({n_points}), got {n_wells}"),
            ));
        }
        Ok(SpatialGrid { n_points, n_wells })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_wells(&self) -> usize {
        self.n_wells
    }

    pub fn length(&self) -> f64 {
        self.n_wells as f64 * PI
    }

    pub fn x_min(&self) -> f64 {
        -0.5 * self.length()
    }

    /// Right end of the domain, identified with `x_min`.
    pub fn x_max(&self) -> f64 {
        0.5 * self.length()
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min() + j as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// Index of the grid point at `−x_j`.
    pub fn mirror_index(&self, j: usize) -> usize {
        (self.n_points - j) % self.n_points
    }

    /// Integer momentum label of FFT bin `bin` (standard FFT ordering).
    pub fn mode_index(&self, bin: usize) -> i64 {
        let n = self.n_points as i64;
        let b = bin as i64;
        if b < n / 2 {
            b
        } else {
            b - n
        }
    }

    /// Wavenumber of FFT bin `bin`; mode `m` has `k = 2m/L`.
    pub fn wavenumber(&self, bin: usize) -> f64 {
        2.0 * self.mode_index(bin) as f64 / self.n_wells as f64
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n_points).map(|b| self.wavenumber(b)).collect()
    }
}

impl Default for SpatialGrid {
    fn default() -> Self {
        SpatialGrid {
            n_points: Self::DEFAULT_POINTS,
            n_wells: Self::DEFAULT_WELLS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spans_two_wells() {
        let g = SpatialGrid::default();
        assert!((g.length() - 2.0 * PI).abs() < 1e-15);
        assert!((g.dx() - (g.x_max() - g.x_min()) / 1024.0).abs() < 1e-15);
        assert_eq!(g.x(512), 0.0);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SpatialGrid::new(1000, 2).is_err());
        assert!(SpatialGrid::new(1024, 3).is_err());
        assert!(SpatialGrid::new(1024, 0).is_err());
        assert!(SpatialGrid::new(256, 4).is_ok());
    }

    #[test]
    fn mirror_maps_points_to_negated_points() {
        let g = SpatialGrid::new(64, 2).unwrap();
        for j in 1..64 {
            assert!((g.x(g.mirror_index(j)) + g.x(j)).abs() < 1e-12);
        }
        // x_min = −π is its own mirror through the periodic identification
        assert_eq!(g.mirror_index(0), 0);
    }

    #[test]
    fn wavenumbers_follow_fft_ordering() {
        let g = SpatialGrid::new(16, 2).unwrap();
        assert_eq!(g.wavenumber(0), 0.0);
        assert_eq!(g.wavenumber(1), 1.0);
        assert_eq!(g.wavenumber(7), 7.0);
        assert_eq!(g.wavenumber(8), -8.0);
        assert_eq!(g.wavenumber(15), -1.0);
    }
}
