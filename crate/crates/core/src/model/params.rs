use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Lattice depth and scaled Planck constant of the pendulum
/// `H = p²/2 − V₀ cos(2x)` with `[x, p] = i k̄`.
///
/// The Mathieu parameter `q = V₀/k̄²` is always recomputed from the pair and
/// never stored, so the two can never drift apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    v0: f64,
    kbar: f64,
}

impl LatticeParams {
    pub fn new(v0: f64, kbar: f64) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::domain(
                "v0",
                format!("must be positive and finite, got {v0}"),
            ));
        }
        if !(kbar.is_finite() && kbar > 0.0) {
            return Err(Error::domain(
                "kbar",
                format!("must be positive and finite, got {kbar}"),
            ));
        }
        Ok(LatticeParams { v0, kbar })
    }

    /// Builds the pair from `q` and `k̄` (`V₀ = q k̄²`).
    pub fn from_q(q: f64, kbar: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::domain(
                "q",
                format!("must be positive and finite, got {q}"),
            ));
        }
        LatticeParams::new(q * kbar * kbar, kbar)
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn kbar(&self) -> f64 {
        self.kbar
    }

    pub fn q(&self) -> f64 {
        self.v0 / (self.kbar * self.kbar)
    }

    /// Small-oscillation frequency at a well bottom, `ω_h = 2√V₀`.
    pub fn omega_h(&self) -> f64 {
        2.0 * self.v0.sqrt()
    }

    /// Harmonic classical period `π/√V₀`.
    pub fn classical_period(&self) -> f64 {
        PI / self.v0.sqrt()
    }

    /// Energy of the state with Mathieu characteristic value `a`.
    pub fn energy_from_characteristic(&self, a: f64) -> f64 {
        0.5 * self.kbar * self.kbar * a
    }

    pub fn characteristic_from_energy(&self, energy: f64) -> f64 {
        2.0 * energy / (self.kbar * self.kbar)
    }

    pub fn oscillator(&self, n_max: usize) -> OscillatorBasisSpec {
        OscillatorBasisSpec {
            beta: 2f64.sqrt() * self.q().powf(0.25),
            omega_h: self.omega_h(),
            n_max,
        }
    }
}

/// Harmonic-oscillator basis fitted to the bottom of one well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorBasisSpec {
    /// Inverse length `β = √2 q^{1/4}`.
    pub beta: f64,
    pub omega_h: f64,
    pub n_max: usize,
}

/// `ln n!`, exact products up to 20 and a running log-sum beyond.
pub fn ln_factorial(n: usize) -> f64 {
    if n <= 20 {
        ((1..=n as u64).product::<u64>() as f64).ln()
    } else {
        ln_factorial(20) + (21..=n).map(|k| (k as f64).ln()).sum::<f64>()
    }
}
