use std::ops::RangeInclusive;

use crate::dynamics::Eigenbasis;
use crate::error::{Error, Result};
use crate::perturbation::{corrected_eigenstate, CoefficientSource, ModelLabel};

/// State family used for each label in the projection table: the published
/// tables for the sixtic states, the third-order series for the octic ones.
pub fn projection_source(label: ModelLabel) -> CoefficientSource {
    match label {
        ModelLabel::Sixtic => CoefficientSource::AsPrinted,
        _ => CoefficientSource::Derived,
    }
}

/// `S_n` for each `n` in `levels`, with the default state family of
/// [`projection_source`].
pub fn projection_s(
    exact: &Eigenbasis,
    label: ModelLabel,
    levels: RangeInclusive<usize>,
) -> Result<Vec<(usize, f64)>> {
    projection_s_with(exact, label, levels, projection_source(label))
}

/// Weight of the approximate state `φ_n` inside exact band `n`,
/// `S_n = Σ_{k ∈ band n} |⟨φ_n|ψ_k⟩|²`.
///
/// On an `L`-well grid each band holds `L` Bloch states; the sum over the
/// band is the overlap with the well-localized (Wannier) combination.
pub fn projection_s_with(
    exact: &Eigenbasis,
    label: ModelLabel,
    levels: RangeInclusive<usize>,
    source: CoefficientSource,
) -> Result<Vec<(usize, f64)>> {
    let wells = exact.grid().n_wells();
    let bands = exact.len() / wells;
    levels
        .map(|n| {
            if n >= bands {
                return Err(Error::IndexOutOfRange {
                    index: n,
                    available: bands,
                });
            }
            let approx = corrected_eigenstate(exact.params(), label, n, exact.grid(), source)?;
            let s = exact.states[n * wells..(n + 1) * wells]
                .iter()
                .map(|psi| approx.overlap_sq(psi))
                .sum();
            Ok((n, s))
        })
        .collect()
}
