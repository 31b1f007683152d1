use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::LatticeParams;
use crate::perturbation::{EnergyModel, ModelLabel};

/// Derivatives smaller than this count as vanishing (infinite time scale).
pub const DERIVATIVE_FLOOR: f64 = 1e-14;

/// `T_(j) = 2π j! k̄ / |∂ʲE/∂nʲ|` at `n̄`, or `+∞` when the derivative
/// vanishes.
pub fn timescale_from_derivatives(model: &EnergyModel, n_bar: f64, j: usize) -> Result<f64> {
    if !(1..=4).contains(&j) {
        return Err(Error::domain("j", format!("must be 1..=4, got {j}")));
    }
    let d = model.derivative(j, n_bar)?.abs();
    if d < DERIVATIVE_FLOOR {
        return Ok(f64::INFINITY);
    }
    let factorial: f64 = (1..=j).map(|i| i as f64).product();
    Ok(2.0 * PI * factorial * model.params().kbar() / d)
}

/// Classical, revival, super-revival and fourth-order times at one `n̄`.
/// Infinite times are stored as `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScales {
    pub t_cl: Option<f64>,
    pub t_rev: Option<f64>,
    pub t_spr: Option<f64>,
    pub t_4: Option<f64>,
    pub n_bar: f64,
    pub source: ModelLabel,
    /// Evaluated from the published closed-form factors.
    pub as_printed: bool,
}

fn finite(t: f64) -> Option<f64> {
    t.is_finite().then_some(t)
}

/// All four derivative time scales of `model` at `n̄`.
pub fn model_timescales(model: &EnergyModel, n_bar: f64) -> Result<TimeScales> {
    let t = |j| timescale_from_derivatives(model, n_bar, j).map(finite);
    Ok(TimeScales {
        t_cl: t(1)?,
        t_rev: t(2)?,
        t_spr: t(3)?,
        t_4: t(4)?,
        n_bar,
        source: model.label(),
        as_printed: false,
    })
}

/// Published closed-form time scales with `s̄ = 2n̄ + 1`:
///
/// * `α⁽¹⁾ = 1 + s̄/(8√q)`, `α⁽²⁾ = α⁽¹⁾ + 3(s̄²+1)/(2⁸q)`,
///   `α⁽³⁾ = α⁽²⁾ + (5s̄³+17s̄)/(2¹¹q^{3/2})` scale `T_cl⁽⁰⁾ = π/√V₀`
/// * `β⁽¹⁾ = 3s̄/(16q) − 1`, `β⁽²⁾ = β⁽¹⁾ + (15s̄²+17)/(2⁸q)` scale
///   `T_rev⁽¹⁾ = 8π/k̄`
/// * `γ = 5s̄/(8√q) − 1` scales `T_spr⁽²⁾ = 64π√V₀/k̄²`
///
/// No closed form exists for the fourth-order time, so `t_4` is `None`.
pub fn closed_form_timescales(
    params: &LatticeParams,
    n_bar: f64,
    label: ModelLabel,
) -> Result<TimeScales> {
    let q = params.q();
    let rq = q.sqrt();
    let s = 2.0 * n_bar + 1.0;
    let t_cl0 = params.classical_period();
    let t_rev1 = 8.0 * PI / params.kbar();
    let t_spr2 = 64.0 * PI * params.v0().sqrt() / params.kbar().powi(2);

    let alpha1 = 1.0 + s / (8.0 * rq);
    let alpha2 = alpha1 + 3.0 * (s * s + 1.0) / (256.0 * q);
    let alpha3 = alpha2 + (5.0 * s.powi(3) + 17.0 * s) / (2048.0 * q * rq);
    let beta1 = 3.0 * s / (16.0 * q) - 1.0;
    let beta2 = beta1 + (15.0 * s * s + 17.0) / (256.0 * q);
    let gamma = 5.0 * s / (8.0 * rq) - 1.0;

    let (t_cl, t_rev, t_spr) = match label {
        ModelLabel::Harmonic => (t_cl0, None, None),
        ModelLabel::Quartic => (alpha1 * t_cl0, Some(t_rev1), None),
        ModelLabel::Sixtic => (alpha2 * t_cl0, Some(beta1.abs() * t_rev1), Some(t_spr2)),
        ModelLabel::Octic => (
            alpha3 * t_cl0,
            Some(beta2.abs() * t_rev1),
            Some(gamma.abs() * t_spr2),
        ),
        ModelLabel::Numeric => {
            return Err(Error::domain(
                "model",
                "no closed form for the numeric model",
            ))
        }
    };
    Ok(TimeScales {
        t_cl: Some(t_cl),
        t_rev,
        t_spr,
        t_4: None,
        n_bar,
        source: label,
        as_printed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturbation::energy_model;

    fn reference_params() -> LatticeParams {
        LatticeParams::new(10.0, 0.5).unwrap()
    }

    #[test]
    fn harmonic_has_only_classical_period() {
        let m = energy_model(&reference_params(), ModelLabel::Harmonic).unwrap();
        for n_bar in [0.0, 2.5, 7.0] {
            let t = model_timescales(&m, n_bar).unwrap();
            assert!((t.t_cl.unwrap() - PI / 10f64.sqrt()).abs() < 1e-14);
            assert_eq!((t.t_rev, t.t_spr, t.t_4), (None, None, None));
        }
    }

    #[test]
    fn quartic_revival_is_level_independent() {
        let m = energy_model(&reference_params(), ModelLabel::Quartic).unwrap();
        for n_bar in [0.0, 1.3, 7.0] {
            let t = timescale_from_derivatives(&m, n_bar, 2).unwrap();
            assert!((t - 16.0 * PI).abs() < 1e-12);
        }
        assert_eq!(
            timescale_from_derivatives(&m, 1.0, 3).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn sixtic_super_revival() {
        let m = energy_model(&reference_params(), ModelLabel::Sixtic).unwrap();
        let expect = 64.0 * PI * 10f64.sqrt() / 0.25;
        let t = timescale_from_derivatives(&m, 3.0, 3).unwrap();
        assert!((t / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn octic_has_fourth_order_time() {
        let m = energy_model(&reference_params(), ModelLabel::Octic).unwrap();
        let t = model_timescales(&m, 2.0).unwrap();
        assert!(t.t_4.unwrap().is_finite());
        assert!(timescale_from_derivatives(&m, 2.0, 5).is_err());
    }

    #[test]
    fn numeric_table_bounds() {
        let m = energy_model(&reference_params(), ModelLabel::Numeric).unwrap();
        assert!(timescale_from_derivatives(&m, 3.0, 1).unwrap().is_finite());
        assert!(timescale_from_derivatives(&m, 40.0, 1).is_err());
    }

    #[test]
    fn printed_factors() {
        let p = reference_params();
        let h = closed_form_timescales(&p, 0.0, ModelLabel::Harmonic).unwrap();
        assert!((h.t_cl.unwrap() - 0.993_458_826_7).abs() < 1e-9);
        let q4 = closed_form_timescales(&p, 0.0, ModelLabel::Quartic).unwrap();
        let alpha1 = 1.0 + 1.0 / (8.0 * 40f64.sqrt());
        assert!((q4.t_cl.unwrap() / h.t_cl.unwrap() - alpha1).abs() < 1e-14);
        assert!((alpha1 - 1.019_764).abs() < 1e-6);
        assert!((q4.t_rev.unwrap() - 50.265_482_457).abs() < 1e-8);
        let s6 = closed_form_timescales(&p, 0.0, ModelLabel::Sixtic).unwrap();
        assert!((s6.t_spr.unwrap() - 256.0 * PI * 10f64.sqrt()).abs() < 1e-9);
        assert!(closed_form_timescales(&p, 0.0, ModelLabel::Numeric).is_err());
    }
}
