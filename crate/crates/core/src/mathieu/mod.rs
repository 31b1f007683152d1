//! Mathieu characteristic values, Bloch bands and the deep/shallow lattice
//! asymptotics, in the standard form `y″ + (a − 2q cos 2v) y = 0` with
//! `v = x + π/2`.

mod asymptotic;
mod frenkel;
mod spectrum;

pub use asymptotic::{
    asymptotic_a_large_q, asymptotic_a_small_q, band_width_asymptotic, depth_over_recoil_from_q,
    large_q_next_term, tunneling_J_over_recoil,
};
pub use frenkel::{
    asymptotic_ce, frenkel_norm_factor, frenkel_terms, FrenkelTerms, VALIDITY_RATIO,
};
pub use spectrum::{
    band_structure, characteristic_values, characteristic_values_with_limit, BlochBands,
    MathieuSpectrum, DEFAULT_MAX_CUTOFF, DEFAULT_TOL,
};
