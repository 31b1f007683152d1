//! Wavepacket propagation in the cosine lattice: grid eigenstates, exact
//! eigenbasis phase evolution, split-operator stepping, autocorrelation
//! traces and density maps.

mod density;
mod eigen;
mod propagate;
mod trace;

pub use density::DensityMap;
pub use eigen::{
    band_populations, eigenbasis_evolve, grid_eigensolve, model_autocorrelation,
    EigenDecomposition, Eigenbasis, CONTAINMENT_MIN, EXPANSION_CUT, SPECTRAL_TOL,
};
pub use propagate::{
    energy_expectation, propagate, split_operator_evolve, Evolution, Method, PropagationConfig,
    NORM_DRIFT_TOL, PHASE_BUDGET,
};
pub use trace::{uniform_times, AutocorrelationTrace};
