//! Perturbation theory about the harmonic well bottom: Taylor coefficients,
//! exact ladder-operator matrix elements, Rayleigh–Schrödinger sums through
//! third order, closed-form energies and energy models, and the corrected
//! eigenstates.
//!
//! Positions enter as `x = √l (a + a†)` with `l = 1/(4√q)`; energies of the
//! perturbation sums are in units of `k̄ω_h`.

mod appendix;
mod energy;
mod ladder;
mod rs;
mod states;
mod taylor;

pub use appendix::{
    appendix_coefficients, beta1_printed_and_derived, correction_table, derived_correction_table,
    printed_correction_table, AppendixCoefficients, CorrectionOrder, StateCorrectionTable,
};
pub use energy::{
    closed_form_coefficients, closed_form_energy, energy_model, energy_model_with,
    CoefficientSource, EnergyModel, ModelLabel, NUMERIC_TABLE_LEVELS,
};
pub use ladder::{position_power_column, position_power_element, LadderMatrix};
pub use rs::{
    expansion_parameters, perturbation_sums, rayleigh_schrodinger, RsExpansion, MAX_ORDER,
};
pub use states::{corrected_coefficients, corrected_eigenstate};
pub use taylor::{taylor_coefficients, TaylorCoefficients};
