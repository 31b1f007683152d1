use super::ladder::LadderMatrix;
use super::taylor::taylor_coefficients;
use crate::error::{Error, Result};
use crate::model::LatticeParams;

/// Highest perturbation order handled (third order in `1/√q`).
pub const MAX_ORDER: usize = 3;

/// Small expansion parameters `ε_j = G⁽²ʲ⁺²⁾ l^{j+1} / (k̄ω_h)` with
/// `l = 1/(4√q)`, so `H⁽²ʲ⁺²⁾ = ε_j k̄ω_h (a + a†)^{2j+2}`.
pub fn expansion_parameters(params: &LatticeParams) -> [f64; MAX_ORDER] {
    let t = taylor_coefficients(params);
    let l = 1.0 / (4.0 * params.q().sqrt());
    let unit = params.kbar() * params.omega_h();
    [
        t.g(4) * l.powi(2) / unit,
        t.g(6) * l.powi(3) / unit,
        t.g(8) * l.powi(4) / unit,
    ]
}

/// Rayleigh–Schrödinger series for level `n` of the oscillator perturbed by
/// `x⁴`, `x⁶`, `x⁸`, counted as orders 1, 2, 3 in `1/√q`.
///
/// Energies are in units of `k̄ω_h` (zeroth order `n + ½`); states use
/// intermediate normalization, `⟨n|n⁽ᵏ⁾⟩ = 0` for `k ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RsExpansion {
    pub n: usize,
    /// Energy unit `k̄ω_h`.
    pub unit: f64,
    pub energies: Vec<f64>,
    /// `states[k][m]` is `⟨m|n⁽ᵏ⁾⟩` on basis states `0..=basis_max`.
    pub states: Vec<Vec<f64>>,
}

impl RsExpansion {
    /// Energy correction of order `k` in physical units.
    pub fn energy(&self, k: usize) -> f64 {
        self.energies[k] * self.unit
    }

    /// `Σ_{k ≤ order} |n⁽ᵏ⁾⟩`, unnormalized.
    pub fn state_through(&self, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.states[0].len()];
        for s in &self.states[..=order] {
            out.iter_mut().zip(s).for_each(|(o, v)| *o += v);
        }
        out
    }
}

pub(crate) struct Perturbations {
    eps: [f64; MAX_ORDER],
    ops: Vec<LadderMatrix>,
    basis_max: usize,
}

impl Perturbations {
    pub(crate) fn new(params: &LatticeParams, basis_max: usize) -> Self {
        Perturbations {
            eps: expansion_parameters(params),
            ops: (1..=MAX_ORDER)
                .map(|j| LadderMatrix::new(2 * j + 2, basis_max))
                .collect(),
            basis_max,
        }
    }

    /// `V_j v` in units of `k̄ω_h`.
    pub(crate) fn apply(&self, j: usize, v: &[f64]) -> Vec<f64> {
        let mut w = self.ops[j - 1].apply(v);
        w.iter_mut().for_each(|x| *x *= self.eps[j - 1]);
        w
    }

    /// Reduced resolvent `Σ_{m≠n} |m⟩⟨m| / (n − m)`.
    pub(crate) fn resolve(&self, n: usize, mut v: Vec<f64>) -> Vec<f64> {
        for (m, x) in v.iter_mut().enumerate() {
            *x = if m == n {
                0.0
            } else {
                *x / (n as f64 - m as f64)
            };
        }
        v
    }

    pub(crate) fn expand(&self, n: usize, order: usize) -> RsExpansion {
        let dim = self.basis_max + 1;
        let mut e0 = vec![0.0; dim];
        e0[n] = 1.0;
        let mut energies = vec![n as f64 + 0.5];
        let mut states = vec![e0];
        for k in 1..=order {
            let mut rhs = vec![0.0; dim];
            let mut ek = 0.0;
            for j in 1..=k.min(MAX_ORDER) {
                let w = self.apply(j, &states[k - j]);
                ek += w[n];
                rhs.iter_mut().zip(&w).for_each(|(r, x)| *r += x);
            }
            energies.push(ek);
            for i in 1..=k {
                let e = energies[i];
                rhs.iter_mut()
                    .zip(&states[k - i])
                    .for_each(|(r, s)| *r -= e * s);
            }
            states.push(self.resolve(n, rhs));
        }
        RsExpansion {
            n,
            unit: 0.0,
            energies,
            states,
        }
    }
}

/// Difference between a truncated and an adequate basis: energy shift of
/// the top order plus the norm of the dropped state components.
fn truncation_estimate(
    params: &LatticeParams,
    n: usize,
    order: usize,
    size: usize,
    required: usize,
) -> f64 {
    let coarse = Perturbations::new(params, size).expand(n, order);
    let full = Perturbations::new(params, required).expand(n, order);
    let de =
        (full.energies[order] - coarse.energies[order]).abs() * params.kbar() * params.omega_h();
    let c = coarse.state_through(order);
    let f = full.state_through(order);
    let dropped = f
        .iter()
        .enumerate()
        .map(|(m, v)| (v - c.get(m).copied().unwrap_or(0.0)).powi(2))
        .sum::<f64>()
        .sqrt();
    de + dropped
}

/// Series for level `n` through `order ≤ 3` on basis states `0..=basis_max`.
pub fn rayleigh_schrodinger(
    params: &LatticeParams,
    n: usize,
    order: usize,
    basis_max: usize,
) -> Result<RsExpansion> {
    if order > MAX_ORDER {
        return Err(Error::domain(
            "order",
            format!("at most {MAX_ORDER}, got {order}"),
        ));
    }
    let required = n + 4 * order;
    if basis_max < required {
        return Err(Error::BasisTooSmall {
            size: basis_max,
            required,
            estimate: truncation_estimate(params, n, order, basis_max, required),
        });
    }
    let mut r = Perturbations::new(params, basis_max).expand(n, order);
    r.unit = params.kbar() * params.omega_h();
    Ok(r)
}

/// Energy correction `E⁽⁴⁾`, `E⁽⁶⁾` or `E⁽⁸⁾` of level `n` from explicit
/// perturbation sums over oscillator states `0..=basis_size`.
///
/// `E⁽⁶⁾` is first order in `x⁶` plus second order in `x⁴`; `E⁽⁸⁾` adds
/// first order in `x⁸`, the `x⁶`–`x⁴` cross term and third order in `x⁴`.
pub fn perturbation_sums(
    params: &LatticeParams,
    max_order_correction: usize,
    n: usize,
    basis_size: usize,
) -> Result<f64> {
    let k = match max_order_correction {
        4 => 1,
        6 => 2,
        8 => 3,
        other => {
            return Err(Error::domain(
                "max_order_correction",
                format!("must be 4, 6 or 8, got {other}"),
            ))
        }
    };
    let required = n + 12;
    if basis_size < required {
        return Err(Error::BasisTooSmall {
            size: basis_size,
            required,
            estimate: truncation_estimate(params, n, k, basis_size, required),
        });
    }
    Ok(rayleigh_schrodinger(params, n, k, basis_size)?.energy(k))
}
