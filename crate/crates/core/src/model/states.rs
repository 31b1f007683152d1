use num_complex::Complex64;

use super::field::WavefunctionField;
use super::grid::SpatialGrid;
use super::hermite::hermite_functions;
use super::params::{LatticeParams, OscillatorBasisSpec};
use crate::error::{Error, Result};

/// Largest tolerated `|φ(seam)| / max|φ|` for a state to count as contained.
pub const CONTAINMENT_TOL: f64 = 1e-8;

/// Largest tolerated overlap between a packet and its periodic image.
pub const IMAGE_OVERLAP_TOL: f64 = 1e-8;

/// Oscillator eigenstates `φ_0..=φ_{n_max}` sampled on `grid`, centered on the
/// well at `x = 0`. No containment check and no renormalization.
pub(crate) fn oscillator_samples(
    spec: &OscillatorBasisSpec,
    n_max: usize,
    grid: &SpatialGrid,
) -> Vec<Vec<f64>> {
    let scale = spec.beta.sqrt();
    let mut out = vec![Vec::with_capacity(grid.n_points()); n_max + 1];
    for j in 0..grid.n_points() {
        let h = hermite_functions(n_max, spec.beta * grid.x(j));
        for (n, v) in h.into_iter().enumerate() {
            out[n].push(scale * v);
        }
    }
    out
}

/// Ratio of `|φ_n|` at the periodic seam `x = ±Lπ/2` to its peak magnitude.
pub fn oscillator_tail(spec: &OscillatorBasisSpec, n: usize, grid: &SpatialGrid) -> f64 {
    let edge = hermite_functions(n, spec.beta * grid.x_max())[n].abs();
    // Peak of |h_n| lies inside the classical region; sample it finely.
    let turning = (2.0 * n as f64 + 1.0).sqrt() + 1.0;
    let peak = (0..=400)
        .map(|i| hermite_functions(n, turning * i as f64 / 400.0)[n].abs())
        .fold(0.0, f64::max);
    edge / peak
}

/// Harmonic eigenstate `φ_n(x) = √(β/2ⁿn!√π) H_n(βx) e^{−β²x²/2}` on the grid,
/// renormalized by quadrature.
pub fn oscillator_eigenstate(
    spec: &OscillatorBasisSpec,
    n: usize,
    grid: &SpatialGrid,
) -> Result<WavefunctionField> {
    if n > spec.n_max {
        return Err(Error::IndexOutOfRange {
            index: n,
            available: spec.n_max,
        });
    }
    let tail = oscillator_tail(spec, n, grid);
    if tail >= CONTAINMENT_TOL {
        return Err(Error::NotContained { tail });
    }
    let samples = oscillator_samples(spec, n, grid).swap_remove(n);
    WavefunctionField::from_real(*grid, &samples)
}

/// Packet displacement of the revival runs: 0.35 of a well half-width.
pub const REVIVAL_DISPLACEMENT: f64 = 0.35 * std::f64::consts::FRAC_PI_2;

/// Momentum width `√(k̄ω_h/2)` of the harmonic ground state of one well; a
/// displaced packet of this width is a coherent state of the well bottom.
pub fn coherent_momentum_width(params: &LatticeParams) -> f64 {
    (0.5 * params.kbar() * params.omega_h()).sqrt()
}

/// Minimum-uncertainty packet
/// `∝ exp(−(x−x₀)²/(4σ²)) exp(i p₀ x / k̄)` with `σ = k̄/(2Δp)`.
///
/// The packet is periodized (summed over domain translates) so it is smooth
/// across the seam.
pub fn gaussian_wavepacket(
    grid: &SpatialGrid,
    x0: f64,
    p0: f64,
    dp: f64,
    kbar: f64,
) -> Result<WavefunctionField> {
    if !(dp.is_finite() && dp > 0.0) {
        return Err(Error::domain("dp", format!("must be positive, got {dp}")));
    }
    if !(kbar.is_finite() && kbar > 0.0) {
        return Err(Error::domain(
            "kbar",
            format!("must be positive, got {kbar}"),
        ));
    }
    let sigma = kbar / (2.0 * dp);
    let length = grid.length();
    let overlap = (-length * length / (8.0 * sigma * sigma)).exp();
    if overlap >= IMAGE_OVERLAP_TOL {
        return Err(Error::PacketTooWide { overlap });
    }
    let amps = grid
        .points()
        .iter()
        .map(|&x| {
            (-3..=3)
                .map(|k| {
                    let y = x - x0 - k as f64 * length;
                    let envelope = (-y * y / (4.0 * sigma * sigma)).exp();
                    Complex64::from_polar(envelope, p0 * (y + x0) / kbar)
                })
                .sum()
        })
        .collect();
    WavefunctionField::normalized(*grid, amps)
}
