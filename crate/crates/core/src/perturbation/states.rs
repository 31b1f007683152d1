use num_complex::Complex64;

use super::appendix::{correction_table, CorrectionOrder};
use super::energy::{CoefficientSource, ModelLabel};
use super::rs::rayleigh_schrodinger;
use crate::error::{Error, Result};
use crate::model::{
    oscillator_samples, oscillator_tail, LatticeParams, SpatialGrid, WavefunctionField,
    CONTAINMENT_TOL,
};

/// Oscillator-basis amplitudes of the approximate level `n` for `label`.
///
/// * harmonic: `φ_n`
/// * quartic: `φ_n + φ⁽¹ᵃ⁾`
/// * sixtic: adds `φ⁽¹ᵇ⁾ + φ⁽²ᵃ⁾`, from the published tables (`AsPrinted`)
///   or from the perturbation sums (`Derived`)
/// * octic: `AsPrinted` reuses the sixtic tables; `Derived` carries the
///   perturbation series through third order
pub fn corrected_coefficients(
    params: &LatticeParams,
    label: ModelLabel,
    n: usize,
    source: CoefficientSource,
) -> Result<Vec<f64>> {
    let mut c = vec![0.0; n + 13];
    c[n] = 1.0;
    let add_table = |c: &mut Vec<f64>, order| {
        for (m, v) in correction_table(params, order, n, source).amplitudes() {
            c[m] += v;
        }
    };
    match (label, source) {
        (ModelLabel::Harmonic, _) => {}
        (ModelLabel::Quartic, _) => add_table(&mut c, CorrectionOrder::OneA),
        (ModelLabel::Sixtic, CoefficientSource::AsPrinted)
        | (ModelLabel::Octic, CoefficientSource::AsPrinted) => {
            add_table(&mut c, CorrectionOrder::OneA);
            add_table(&mut c, CorrectionOrder::OneB);
            add_table(&mut c, CorrectionOrder::TwoA);
        }
        (ModelLabel::Sixtic, CoefficientSource::Derived) => {
            c = rayleigh_schrodinger(params, n, 2, n + 12)?.state_through(2);
        }
        (ModelLabel::Octic, CoefficientSource::Derived) => {
            c = rayleigh_schrodinger(params, n, 3, n + 12)?.state_through(3);
        }
        (ModelLabel::Numeric, _) => {
            return Err(Error::domain(
                "label",
                "no perturbative state for the numeric model",
            ))
        }
    }
    Ok(c)
}

/// Approximate eigenstate on the grid, renormalized to one. Every oscillator
/// state it contains must be contained in the domain.
pub fn corrected_eigenstate(
    params: &LatticeParams,
    label: ModelLabel,
    n: usize,
    grid: &SpatialGrid,
    source: CoefficientSource,
) -> Result<WavefunctionField> {
    let c = corrected_coefficients(params, label, n, source)?;
    let top = c.iter().rposition(|&v| v != 0.0).unwrap_or(n);
    let spec = params.oscillator(top);
    let tail = oscillator_tail(&spec, top, grid);
    if tail >= CONTAINMENT_TOL {
        return Err(Error::NotContained { tail });
    }
    let basis = oscillator_samples(&spec, top, grid);
    let amps = (0..grid.n_points())
        .map(|j| {
            let v: f64 = basis.iter().zip(&c).map(|(phi, w)| phi[j] * w).sum();
            Complex64::new(v, 0.0)
        })
        .collect();
    WavefunctionField::normalized(*grid, amps)
}
