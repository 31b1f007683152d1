//! Physical parameters, the periodic grid, the oscillator basis and initial
//! wavepackets.
//!
//! Canonical convention throughout the crate: `H = p²/2 − V₀ cos(2x)` with
//! `[x, p] = i k̄`. Wells sit at `x = kπ`, the Mathieu parameter is
//! `q = V₀/k̄²`, and energies map to characteristic values by
//! `E = (k̄²/2) a`. A state counts as bound when `E < V₀`, i.e. `a < 2q`.

mod field;
mod fourier;
mod grid;
mod hermite;
mod params;
mod states;

pub use field::WavefunctionField;
pub use fourier::Fourier;
pub use grid::SpatialGrid;
pub use hermite::{hermite_eval, hermite_functions};
pub use params::{ln_factorial, LatticeParams, OscillatorBasisSpec};
pub(crate) use states::oscillator_samples;
pub use states::{
    coherent_momentum_width, gaussian_wavepacket, oscillator_eigenstate, oscillator_tail,
    CONTAINMENT_TOL, IMAGE_OVERLAP_TOL, REVIVAL_DISPLACEMENT,
};
