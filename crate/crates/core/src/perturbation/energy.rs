use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mathieu::{characteristic_values, DEFAULT_TOL};
use crate::model::LatticeParams;

/// Which printed constants to use where the published closed forms disagree
/// with the perturbation sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientSource {
    /// Values confirmed by the explicit perturbation sums.
    #[default]
    Derived,
    /// The published expressions, verbatim.
    AsPrinted,
}

/// Closed-form energy term of level `n`:
///
/// * order 0: `(2n+1) k̄√V₀ − V₀`
/// * order 4: `−(k̄²/8)(2n²+2n+1)`
/// * order 6: `−(k̄³/√V₀)(2n³+3n²+3n+1)/64`
/// * order 8: `−(k̄⁴/V₀)(5n⁴+10n³+16n²+11n+3)/512`
///
/// With [`CoefficientSource::AsPrinted`] orders 6 and 8 use `1/32` and `1/256`.
pub fn closed_form_energy(
    params: &LatticeParams,
    order: u32,
    n: usize,
    source: CoefficientSource,
) -> Result<f64> {
    let c = closed_form_coefficients(params, order, source)?;
    let nf = n as f64;
    Ok(c.iter().rev().fold(0.0, |acc, c| acc * nf + c))
}

/// Polynomial coefficients in `n` (lowest power first) of one closed-form term.
pub fn closed_form_coefficients(
    params: &LatticeParams,
    order: u32,
    source: CoefficientSource,
) -> Result<Vec<f64>> {
    let (v0, kb) = (params.v0(), params.kbar());
    let rv = v0.sqrt();
    let printed = source == CoefficientSource::AsPrinted;
    let scaled = |scale: f64, poly: &[f64]| poly.iter().map(|c| scale * c).collect();
    Ok(match order {
        0 => vec![kb * rv - v0, 2.0 * kb * rv],
        4 => scaled(-kb * kb / 8.0, &[1.0, 2.0, 2.0]),
        6 => {
            let denom = if printed { 32.0 } else { 64.0 };
            scaled(-kb.powi(3) / (rv * denom), &[1.0, 3.0, 3.0, 2.0])
        }
        8 => {
            let denom = if printed { 256.0 } else { 512.0 };
            scaled(-kb.powi(4) / (v0 * denom), &[3.0, 11.0, 16.0, 10.0, 5.0])
        }
        other => {
            return Err(Error::domain(
                "order",
                format!("must be 0, 4, 6 or 8, got {other}"),
            ))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelLabel {
    Harmonic,
    Quartic,
    Sixtic,
    Octic,
    Numeric,
}

impl ModelLabel {
    pub const ANALYTIC: [ModelLabel; 4] = [
        ModelLabel::Harmonic,
        ModelLabel::Quartic,
        ModelLabel::Sixtic,
        ModelLabel::Octic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelLabel::Harmonic => "harmonic",
            ModelLabel::Quartic => "quartic",
            ModelLabel::Sixtic => "sixtic",
            ModelLabel::Octic => "octic",
            ModelLabel::Numeric => "numeric",
        }
    }

    /// Closed-form orders summed by this model.
    fn orders(self) -> &'static [u32] {
        match self {
            ModelLabel::Harmonic => &[0],
            ModelLabel::Quartic => &[0, 4],
            ModelLabel::Sixtic => &[0, 4, 6],
            ModelLabel::Octic | ModelLabel::Numeric => &[0, 4, 6, 8],
        }
    }
}

impl fmt::Display for ModelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "harmonic" => ModelLabel::Harmonic,
            "quartic" => ModelLabel::Quartic,
            "sixtic" => ModelLabel::Sixtic,
            "octic" => ModelLabel::Octic,
            "numeric" => ModelLabel::Numeric,
            other => return Err(Error::domain("model", format!("unknown model '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Spectrum {
    /// `E(n) = Σ c_i nⁱ`.
    Polynomial(Vec<f64>),
    /// `E_n` for `n = 0, 1, ...`.
    Table(Vec<f64>),
}

/// Energy as a function of the level index, analytic or tabulated.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyModel {
    label: ModelLabel,
    params: LatticeParams,
    spectrum: Spectrum,
}

/// Levels tabulated by the numeric model.
pub const NUMERIC_TABLE_LEVELS: usize = 16;

impl EnergyModel {
    pub fn label(&self) -> ModelLabel {
        self.label
    }

    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    /// Polynomial coefficients, lowest power first; `None` for tables.
    pub fn coefficients(&self) -> Option<&[f64]> {
        match &self.spectrum {
            Spectrum::Polynomial(c) => Some(c),
            Spectrum::Table(_) => None,
        }
    }

    pub fn table(&self) -> Option<&[f64]> {
        match &self.spectrum {
            Spectrum::Table(t) => Some(t),
            Spectrum::Polynomial(_) => None,
        }
    }

    /// `κ_i` with `E(n) = (Σ κ_i nⁱ) k̄ω_h + U(r_m)`.
    pub fn kappa(&self) -> Option<Vec<f64>> {
        let unit = self.params.kbar() * self.params.omega_h();
        self.coefficients().map(|c| {
            let mut k: Vec<f64> = c.iter().map(|x| x / unit).collect();
            k[0] += self.params.v0() / unit;
            k
        })
    }

    /// Energy of level `n`. Tables interpolate linearly between integers.
    pub fn energy(&self, n: f64) -> Result<f64> {
        match &self.spectrum {
            Spectrum::Polynomial(c) => Ok(c.iter().rev().fold(0.0, |acc, c| acc * n + c)),
            Spectrum::Table(t) => {
                let last = (t.len() - 1) as f64;
                if !(0.0..=last).contains(&n) {
                    return Err(Error::domain("n", format!("{n} outside table [0, {last}]")));
                }
                let i = (n.floor() as usize).min(t.len() - 2);
                let f = n - i as f64;
                Ok(t[i] * (1.0 - f) + t[i + 1] * f)
            }
        }
    }

    /// `dʲE/dnʲ` at `n`. Polynomials are differentiated exactly; tables use
    /// unit-spacing central differences interpolated linearly in `n`.
    pub fn derivative(&self, j: usize, n: f64) -> Result<f64> {
        if j == 0 {
            return self.energy(n);
        }
        match &self.spectrum {
            Spectrum::Polynomial(c) => {
                let mut d = c.clone();
                for _ in 0..j {
                    d = d
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, x)| i as f64 * x)
                        .collect();
                }
                Ok(d.iter().rev().fold(0.0, |acc, c| acc * n + c))
            }
            Spectrum::Table(t) => table_derivative(t, j, n),
        }
    }
}

fn stencil(t: &[f64], j: usize, i: usize) -> f64 {
    match j {
        1 => 0.5 * (t[i + 1] - t[i - 1]),
        2 => t[i + 1] - 2.0 * t[i] + t[i - 1],
        3 => 0.5 * (t[i + 2] - 2.0 * t[i + 1] + 2.0 * t[i - 1] - t[i - 2]),
        _ => t[i + 2] - 4.0 * t[i + 1] + 6.0 * t[i] - 4.0 * t[i - 1] + t[i - 2],
    }
}

fn table_derivative(t: &[f64], j: usize, n: f64) -> Result<f64> {
    if j > 4 {
        return Err(Error::domain(
            "j",
            format!("numeric derivatives up to 4, got {j}"),
        ));
    }
    let reach = if j <= 2 { 1 } else { 2 };
    let lo = reach as f64;
    let hi = (t.len() - 1 - reach) as f64;
    if !(n >= lo && n <= hi) {
        return Err(Error::domain(
            "n_bar",
            format!("{n} outside [{lo}, {hi}] for derivative order {j}"),
        ));
    }
    let i = (n.floor() as usize).min(t.len() - 1 - reach);
    let f = n - i as f64;
    if f == 0.0 {
        return Ok(stencil(t, j, i));
    }
    Ok(stencil(t, j, i) * (1.0 - f) + stencil(t, j, i + 1) * f)
}

/// Cumulative closed-form model, or the tabulated exact spectrum
/// `E_n = (k̄²/2) a_n` for [`ModelLabel::Numeric`].
pub fn energy_model(params: &LatticeParams, label: ModelLabel) -> Result<EnergyModel> {
    energy_model_with(params, label, CoefficientSource::Derived)
}

pub fn energy_model_with(
    params: &LatticeParams,
    label: ModelLabel,
    source: CoefficientSource,
) -> Result<EnergyModel> {
    let spectrum = if label == ModelLabel::Numeric {
        let s = characteristic_values(params.q(), NUMERIC_TABLE_LEVELS - 1, DEFAULT_TOL)?;
        Spectrum::Table(
            s.a.iter()
                .map(|&a| params.energy_from_characteristic(a))
                .collect(),
        )
    } else {
        let mut c = vec![0.0; 5];
        for &order in label.orders() {
            for (i, v) in closed_form_coefficients(params, order, source)?
                .into_iter()
                .enumerate()
            {
                c[i] += v;
            }
        }
        let degree = match label {
            ModelLabel::Harmonic => 1,
            ModelLabel::Quartic => 2,
            ModelLabel::Sixtic => 3,
            _ => 4,
        };
        c.truncate(degree + 1);
        Spectrum::Polynomial(c)
    };
    Ok(EnergyModel {
        label,
        params: *params,
        spectrum,
    })
}
