use num_complex::Complex64;

use super::trace::AutocorrelationTrace;
use crate::error::{Error, Result};
use crate::model::{Fourier, LatticeParams, SpatialGrid, WavefunctionField};
use crate::perturbation::EnergyModel;
use crate::tridiag::SymTridiagonal;

/// Largest chain-end amplitude tolerated in a retained eigenvector.
pub const SPECTRAL_TOL: f64 = 1e-10;

/// Retained states must carry this much of the packet's probability.
pub const CONTAINMENT_MIN: f64 = 1.0 - 1e-6;

/// Cumulative probability at which the expansion is cut.
pub const EXPANSION_CUT: f64 = 1.0 - 1e-8;

/// Lowest eigenpairs of the grid Hamiltonian, energies ascending.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    params: LatticeParams,
    grid: SpatialGrid,
    pub energies: Vec<f64>,
    pub states: Vec<WavefunctionField>,
    /// Largest chain-end amplitude among the retained states.
    pub accuracy: f64,
}

/// Diagonalizes `H = −(k̄²/2)∂² − V₀ cos 2x` with a Fourier-spectral kinetic
/// term on `grid`.
///
/// `cos 2x` couples plane waves `m` and `m ± L` (`L` wells), so `H` splits
/// into `L` tridiagonal chains, one per quasimomentum. Each chain is solved
/// exactly; the neglected corner coupling is bounded by the chain-end
/// amplitude, reported as `accuracy`.
pub fn grid_eigensolve(
    params: &LatticeParams,
    grid: &SpatialGrid,
    n_states: usize,
) -> Result<Eigenbasis> {
    let n = grid.n_points();
    if n_states == 0 || n_states > n / 4 {
        return Err(Error::domain(
            "n_states",
            format!("must be in 1..={}, got {n_states}", n / 4),
        ));
    }
    let wells = grid.n_wells() as i64;
    let half = (n / 2) as i64;
    let kbar = params.kbar();
    let mut pairs: Vec<(f64, Vec<i64>, Vec<f64>, f64)> = Vec::with_capacity(n);
    for r in 0..wells {
        let modes: Vec<i64> = (-half..half).filter(|m| m.rem_euclid(wells) == r).collect();
        let diag = modes
            .iter()
            .map(|&m| {
                let k = 2.0 * m as f64 / wells as f64;
                0.5 * kbar * kbar * k * k
            })
            .collect();
        let off = vec![-0.5 * params.v0(); modes.len() - 1];
        let eig = SymTridiagonal::new(diag, off)?.eigen()?;
        for (e, v) in eig.values.into_iter().zip(eig.vectors) {
            let edge = v[0].abs().max(v[v.len() - 1].abs());
            pairs.push((e, modes.clone(), v, edge));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.truncate(n_states);

    let accuracy = pairs.iter().map(|p| p.3).fold(0.0, f64::max);
    if accuracy > SPECTRAL_TOL {
        return Err(Error::SpectralAccuracy { estimate: accuracy });
    }
    let fourier = Fourier::new(n);
    let x_min = grid.x_min();
    let mut energies = Vec::with_capacity(n_states);
    let mut states = Vec::with_capacity(n_states);
    for (e, modes, v, _) in pairs {
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        for (&m, &c) in modes.iter().zip(&v) {
            let k = 2.0 * m as f64 / wells as f64;
            spec[m.rem_euclid(n as i64) as usize] = Complex64::from_polar(c, k * x_min);
        }
        fourier.synthesize(&mut spec);
        let mut field = WavefunctionField::normalized(*grid, spec)?;
        field.fix_phase();
        energies.push(e);
        states.push(field);
    }
    Ok(Eigenbasis {
        params: *params,
        grid: *grid,
        energies,
        states,
        accuracy,
    })
}

impl Eigenbasis {
    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Expands `psi` and keeps the lowest states up to cumulative
    /// probability [`EXPANSION_CUT`].
    pub fn decompose(&self, psi: &WavefunctionField) -> Result<EigenDecomposition> {
        if *psi.grid() != self.grid {
            return Err(Error::domain(
                "psi",
                "grid differs from the eigenbasis grid",
            ));
        }
        let all: Vec<Complex64> = self.states.iter().map(|s| s.inner(psi)).collect();
        let mut keep = all.len();
        let mut acc = 0.0;
        for (i, c) in all.iter().enumerate() {
            acc += c.norm_sqr();
            if acc >= EXPANSION_CUT {
                keep = i + 1;
                break;
            }
        }
        let captured = all[..keep].iter().map(|c| c.norm_sqr()).sum();
        Ok(EigenDecomposition {
            params: self.params,
            grid: self.grid,
            reference_energy: self.energies[0],
            energies: self.energies[..keep].to_vec(),
            states: self.states[..keep].to_vec(),
            amplitudes: all[..keep].to_vec(),
            captured,
        })
    }
}

/// Expansion `ψ = Σ c_n ψ_n` of one packet over the lowest grid eigenstates.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    params: LatticeParams,
    grid: SpatialGrid,
    /// Ground-state energy, used as the phase reference.
    pub reference_energy: f64,
    pub energies: Vec<f64>,
    pub states: Vec<WavefunctionField>,
    pub amplitudes: Vec<Complex64>,
    /// `Σ|c_n|²` over the retained states.
    pub captured: f64,
}

impl EigenDecomposition {
    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    fn check_containment(&self) -> Result<()> {
        if self.captured < CONTAINMENT_MIN {
            return Err(Error::Containment {
                missing: 1.0 - self.captured,
            });
        }
        Ok(())
    }

    /// `ψ(t) = Σ c_n ψ_n e^{−iE_n t/k̄}`, renormalized over retained states.
    pub fn state_at(&self, t: f64) -> Result<WavefunctionField> {
        self.check_containment()?;
        let kbar = self.params.kbar();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.grid.n_points()];
        for ((c, e), s) in self.amplitudes.iter().zip(&self.energies).zip(&self.states) {
            let w = c * Complex64::from_polar(1.0, -(e - self.reference_energy) * t / kbar);
            amps.iter_mut()
                .zip(s.amplitudes())
                .for_each(|(a, b)| *a += w * b);
        }
        WavefunctionField::normalized(self.grid, amps)
    }
}

/// Exact-in-time autocorrelation `A(t) = Σ|c_n|² e^{−i(E_n−E_0)t/k̄}`, with
/// the weights renormalized over the retained states.
pub fn eigenbasis_evolve(
    decomposition: &EigenDecomposition,
    times: &[f64],
) -> Result<AutocorrelationTrace> {
    decomposition.check_containment()?;
    let weights: Vec<f64> = decomposition
        .amplitudes
        .iter()
        .map(|c| c.norm_sqr() / decomposition.captured)
        .collect();
    let shifts: Vec<f64> = decomposition
        .energies
        .iter()
        .map(|e| e - decomposition.reference_energy)
        .collect();
    Ok(phase_sum(&weights, &shifts, times, decomposition.params))
}

/// Probability per band: band `n` holds eigenstates `nL..(n+1)L` of an
/// `L`-well grid.
pub fn band_populations(decomposition: &EigenDecomposition) -> Vec<f64> {
    let wells = decomposition.grid.n_wells();
    decomposition
        .amplitudes
        .chunks(wells)
        .map(|band| band.iter().map(|c| c.norm_sqr()).sum::<f64>() / decomposition.captured)
        .collect()
}

/// Autocorrelation of a packet with band populations `populations` whose
/// levels follow `model`: `A(t) = Σ P_n e^{−i(E(n)−E(0))t/k̄}`. Trailing
/// bands below `1e−14` are dropped.
pub fn model_autocorrelation(
    populations: &[f64],
    model: &EnergyModel,
    times: &[f64],
) -> Result<AutocorrelationTrace> {
    let top = populations
        .iter()
        .rposition(|&p| p >= 1e-14)
        .map_or(0, |i| i + 1);
    let e0 = model.energy(0.0)?;
    let shifts = (0..top)
        .map(|n| Ok(model.energy(n as f64)? - e0))
        .collect::<Result<Vec<f64>>>()?;
    Ok(phase_sum(
        &populations[..top],
        &shifts,
        times,
        *model.params(),
    ))
}

fn phase_sum(
    weights: &[f64],
    shifts: &[f64],
    times: &[f64],
    params: LatticeParams,
) -> AutocorrelationTrace {
    let kbar = params.kbar();
    let values = times
        .iter()
        .map(|&t| {
            weights
                .iter()
                .zip(shifts)
                .map(|(w, de)| Complex64::from_polar(*w, -de * t / kbar))
                .sum()
        })
        .collect();
    AutocorrelationTrace {
        times: times.to_vec(),
        values,
        params,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathieu::characteristic_values;
    use crate::model::gaussian_wavepacket;

    fn reference_params() -> LatticeParams {
        LatticeParams::new(10.0, 0.5).unwrap()
    }

    #[test]
    fn ground_energy_matches_mathieu() {
        let p = reference_params();
        let basis = grid_eigensolve(&p, &SpatialGrid::default(), 32).unwrap();
        let a0 = characteristic_values(p.q(), 1, 1e-12).unwrap().a[0];
        assert!((basis.energies[0] - p.energy_from_characteristic(a0)).abs() < 1e-8);
    }

    #[test]
    fn bands_match_mathieu_edges() {
        let p = reference_params();
        let basis = grid_eigensolve(&p, &SpatialGrid::default(), 20).unwrap();
        let spec = characteristic_values(p.q(), 10, 1e-12).unwrap();
        for n in 0..10 {
            let lo = p.energy_from_characteristic(spec.a[n]);
            let hi = p.energy_from_characteristic(spec.b_n(n + 1).unwrap());
            let mut band = [basis.energies[2 * n], basis.energies[2 * n + 1]];
            band.sort_by(f64::total_cmp);
            let mut edges = [lo, hi];
            edges.sort_by(f64::total_cmp);
            assert!((band[0] - edges[0]).abs() < 1e-8, "n={n}");
            assert!((band[1] - edges[1]).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn eight_bound_bands() {
        let p = reference_params();
        let basis = grid_eigensolve(&p, &SpatialGrid::default(), 40).unwrap();
        let bound = basis.energies.iter().filter(|&&e| e < p.v0()).count();
        assert_eq!(bound / 2, 8);
    }

    #[test]
    fn free_particle_ladder() {
        // The smallest admissible depth stands in for V₀ = 0.
        let p = LatticeParams::new(1e-300, 0.5).unwrap();
        let basis = grid_eigensolve(&p, &SpatialGrid::new(256, 2).unwrap(), 9).unwrap();
        let expected = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0, 16.0, 16.0];
        for (e, m2) in basis.energies.iter().zip(expected) {
            assert!((e - 0.125 * m2).abs() < 1e-12);
        }
    }

    #[test]
    fn states_are_orthonormal() {
        let basis = grid_eigensolve(&reference_params(), &SpatialGrid::default(), 40).unwrap();
        for i in 0..basis.len() {
            for j in 0..=i {
                let g = basis.states[i].inner(&basis.states[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - expect).norm() < 1e-8, "({i},{j})");
            }
        }
    }

    #[test]
    fn too_many_states_rejected() {
        let grid = SpatialGrid::new(64, 2).unwrap();
        assert!(grid_eigensolve(&reference_params(), &grid, 17).is_err());
        match grid_eigensolve(&LatticeParams::new(10.0, 4.0).unwrap(), &grid, 16) {
            Err(Error::SpectralAccuracy { estimate }) => assert!(estimate > SPECTRAL_TOL),
            Ok(b) => assert!(b.accuracy <= SPECTRAL_TOL),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn two_state_beat() {
        let p = reference_params();
        let basis = grid_eigensolve(&p, &SpatialGrid::default(), 8).unwrap();
        let amps: Vec<Complex64> = basis.states[0]
            .amplitudes()
            .iter()
            .zip(basis.states[2].amplitudes())
            .map(|(a, b)| a + b)
            .collect();
        let psi = WavefunctionField::normalized(*basis.grid(), amps).unwrap();
        let d = basis.decompose(&psi).unwrap();
        let gap = basis.energies[2] - basis.energies[0];
        let times: Vec<f64> = (0..50).map(|i| 0.1 * i as f64).collect();
        let trace = eigenbasis_evolve(&d, &times).unwrap();
        for (t, a2) in times.iter().zip(trace.abs_sq()) {
            let expect = (gap * t / (2.0 * p.kbar())).cos().powi(2);
            assert!((a2 - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn decomposition_is_complete_and_reconstructs() {
        let p = reference_params();
        let grid = SpatialGrid::default();
        let basis = grid_eigensolve(&p, &grid, 128).unwrap();
        let psi = gaussian_wavepacket(&grid, 0.55, 0.0, 0.5, 0.5).unwrap();
        let d = basis.decompose(&psi).unwrap();
        assert!((d.captured - 1.0).abs() < 1e-8);
        assert!(d.state_at(0.0).unwrap().overlap_sq(&psi) > 1.0 - 1e-8);
        let pops = band_populations(&d);
        assert!((pops.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_basis_fails_containment() {
        let p = reference_params();
        let grid = SpatialGrid::default();
        let basis = grid_eigensolve(&p, &grid, 4).unwrap();
        let psi = gaussian_wavepacket(&grid, 0.55, 0.0, 0.5, 0.5).unwrap();
        let d = basis.decompose(&psi).unwrap();
        assert!(matches!(
            eigenbasis_evolve(&d, &[0.0]),
            Err(Error::Containment { missing }) if missing > 1e-6
        ));
    }
}
