use num_complex::Complex64;

use super::density::DensityMap;
use super::eigen::{eigenbasis_evolve, grid_eigensolve};
use super::trace::AutocorrelationTrace;
use crate::error::{Error, Result};
use crate::mathieu::{characteristic_values, DEFAULT_TOL};
use crate::model::{Fourier, LatticeParams, WavefunctionField};

/// Largest kinetic phase per step allowed over the populated momenta.
pub const PHASE_BUDGET: f64 = 0.5;

/// Norm drift that aborts a split-operator run.
pub const NORM_DRIFT_TOL: f64 = 1e-8;

/// Momentum bins lighter than this are ignored by the phase budget.
const POPULATED: f64 = 1e-14;

const MAX_STEPS: f64 = u32::MAX as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SplitOperator,
    Eigenbasis,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split-operator" => Ok(Method::SplitOperator),
            "eigenbasis" => Ok(Method::Eigenbasis),
            other => Err(Error::domain(
                "method",
                format!("expected split-operator or eigenbasis, got {other}"),
            )),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::SplitOperator => "split-operator",
            Method::Eigenbasis => "eigenbasis",
        })
    }
}

/// Time stepping and sampling for one run. Sample times are exact multiples
/// of `dt`; a negative `dt` runs backwards (then `t_max ≤ 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationConfig {
    pub dt: f64,
    pub t_max: f64,
    pub method: Method,
    /// Steps between autocorrelation samples.
    pub record_stride: usize,
    /// Keep every `density_stride`-th grid point in density snapshots;
    /// `None` records no density.
    pub density_stride: Option<usize>,
    /// Samples between density snapshots.
    pub density_every: usize,
    /// Phase reference; the Mathieu ground energy when `None`.
    pub reference_energy: Option<f64>,
}

impl PropagationConfig {
    pub fn new(dt: f64, t_max: f64) -> Self {
        PropagationConfig {
            dt,
            t_max,
            method: Method::SplitOperator,
            record_stride: 1,
            density_stride: None,
            density_every: 10,
            reference_energy: None,
        }
    }

    /// `T_cl⁽⁰⁾/200`.
    pub fn default_dt(params: &LatticeParams) -> f64 {
        params.classical_period() / 200.0
    }

    /// `1.2 · 8π/k̄`, enough to cover the first quantum revival.
    pub fn default_revival_t_max(params: &LatticeParams) -> f64 {
        1.2 * 8.0 * std::f64::consts::PI / params.kbar()
    }

    /// Number of steps, `⌈t_max/dt⌉`.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt.is_finite() && self.dt != 0.0) {
            return Err(Error::domain(
                "dt",
                format!("must be finite and nonzero, got {}", self.dt),
            ));
        }
        let ratio = self.t_max / self.dt;
        if !(ratio.is_finite() && ratio >= 0.0) {
            return Err(Error::domain(
                "t_max",
                format!("must share the sign of dt, got {}", self.t_max),
            ));
        }
        if ratio > MAX_STEPS {
            return Err(Error::domain(
                "t_max",
                format!("{ratio:.3e} steps exceed the step limit"),
            ));
        }
        if self.record_stride == 0 {
            return Err(Error::domain("record_stride", "must be positive"));
        }
        if self.density_every == 0 {
            return Err(Error::domain("density_every", "must be positive"));
        }
        Ok((ratio - 1e-9).ceil().max(0.0) as usize)
    }

    /// Sample instants `0, s·dt, 2s·dt, …` up to the last step.
    pub fn sample_times(&self) -> Result<Vec<f64>> {
        let steps = self.steps()?;
        Ok((0..=steps)
            .step_by(self.record_stride)
            .map(|k| k as f64 * self.dt)
            .collect())
    }
}

/// Output of a propagation run.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub trace: AutocorrelationTrace,
    pub density: Option<DensityMap>,
    pub final_state: WavefunctionField,
}

fn reference_energy(params: &LatticeParams, config: &PropagationConfig) -> Result<f64> {
    match config.reference_energy {
        Some(e) => Ok(e),
        None => {
            let a0 = characteristic_values(params.q(), 1, DEFAULT_TOL)?.a[0];
            Ok(params.energy_from_characteristic(a0))
        }
    }
}

/// Strang splitting `e^{−iV dt/2k̄} e^{−iT dt/k̄} e^{−iV dt/2k̄}` with the
/// kinetic factor applied in momentum space.
pub fn split_operator_evolve(
    psi0: &WavefunctionField,
    params: &LatticeParams,
    config: &PropagationConfig,
) -> Result<Evolution> {
    let steps = config.steps()?;
    let grid = *psi0.grid();
    let n = grid.n_points();
    let kbar = params.kbar();
    let dt = config.dt;
    let fourier = Fourier::new(n);

    let weights = psi0.momentum_weights(&fourier);
    let worst = grid
        .wavenumbers()
        .iter()
        .zip(&weights)
        .filter(|(_, &w)| w > POPULATED)
        .map(|(k, _)| (0.5 * kbar * k * k * dt).abs())
        .fold(0.0, f64::max);
    if worst >= PHASE_BUDGET {
        return Err(Error::domain(
            "dt",
            format!("kinetic phase {worst:.3} rad per step exceeds {PHASE_BUDGET}"),
        ));
    }

    let half_v: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&x| Complex64::from_polar(1.0, params.v0() * (2.0 * x).cos() * dt / (2.0 * kbar)))
        .collect();
    let kinetic: Vec<Complex64> = grid
        .wavenumbers()
        .iter()
        .map(|&k| Complex64::from_polar(1.0, -0.5 * kbar * k * k * dt))
        .collect();
    let e_ref = reference_energy(params, config)?;

    let mut density = match config.density_stride {
        Some(s) => Some(DensityMap::new(grid, s)?),
        None => None,
    };
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut psi = psi0.amplitudes().to_vec();
    for step in 0..=steps {
        if step > 0 {
            psi.iter_mut().zip(&half_v).for_each(|(a, v)| *a *= v);
            fourier.forward(&mut psi);
            psi.iter_mut().zip(&kinetic).for_each(|(a, k)| *a *= k);
            fourier.inverse(&mut psi);
            psi.iter_mut().zip(&half_v).for_each(|(a, v)| *a *= v);
        }
        if step % config.record_stride != 0 {
            continue;
        }
        let t = step as f64 * dt;
        let field = WavefunctionField::from_evolved(grid, psi.clone());
        let drift = (field.norm() - 1.0).abs();
        if drift > NORM_DRIFT_TOL {
            return Err(Error::NormDrift { drift, step });
        }
        values.push(psi0.inner(&field) * Complex64::from_polar(1.0, e_ref * t / kbar));
        if let Some(map) = density.as_mut() {
            if times.len() % config.density_every == 0 {
                map.push(t, &field)?;
            }
        }
        times.push(t);
    }
    Ok(Evolution {
        trace: AutocorrelationTrace {
            times,
            values,
            params: *params,
        },
        density,
        final_state: WavefunctionField::from_evolved(grid, psi),
    })
}

/// Runs `config.method`. The eigenbasis route diagonalizes on the packet's
/// grid with `n_points/4` states.
pub fn propagate(
    psi0: &WavefunctionField,
    params: &LatticeParams,
    config: &PropagationConfig,
) -> Result<Evolution> {
    match config.method {
        Method::SplitOperator => split_operator_evolve(psi0, params, config),
        Method::Eigenbasis => {
            let grid = *psi0.grid();
            let basis = grid_eigensolve(params, &grid, grid.n_points() / 4)?;
            let mut decomposition = basis.decompose(psi0)?;
            if let Some(e) = config.reference_energy {
                decomposition.reference_energy = e;
            }
            let times = config.sample_times()?;
            let trace = eigenbasis_evolve(&decomposition, &times)?;
            let density = match config.density_stride {
                Some(s) => {
                    let mut map = DensityMap::new(grid, s)?;
                    for &t in times.iter().step_by(config.density_every) {
                        map.push(t, &decomposition.state_at(t)?)?;
                    }
                    Some(map)
                }
                None => None,
            };
            let final_state = decomposition.state_at(*times.last().unwrap_or(&0.0))?;
            Ok(Evolution {
                trace,
                density,
                final_state,
            })
        }
    }
}

/// `⟨H⟩` with the kinetic part evaluated spectrally.
pub fn energy_expectation(psi: &WavefunctionField, params: &LatticeParams) -> f64 {
    let grid = psi.grid();
    let fourier = Fourier::new(grid.n_points());
    let kbar = params.kbar();
    let kinetic: f64 = grid
        .wavenumbers()
        .iter()
        .zip(psi.momentum_weights(&fourier))
        .map(|(k, w)| 0.5 * kbar * kbar * k * k * w)
        .sum();
    let potential: f64 = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, z)| -params.v0() * (2.0 * grid.x(j)).cos() * z.norm_sqr())
        .sum::<f64>()
        * grid.dx();
    kinetic + potential
}
