use crate::error::{Error, Result};
use crate::tridiag::SymTridiagonal;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_CUTOFF: usize = 512;

/// Characteristic values at one `q`: `a[0..=n_max]` for the even solutions
/// and `b[0..n_max]` holding `b_1..=b_{n_max}` for the odd ones.
#[derive(Debug, Clone, PartialEq)]
pub struct MathieuSpectrum {
    pub q: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Fourier size per symmetry sector of the accepted solve.
    pub cutoff: usize,
    /// Largest eigenvalue shift observed when the cutoff was last doubled.
    pub residual: f64,
}

impl MathieuSpectrum {
    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    /// `b_n` for `n ≥ 1`.
    pub fn b_n(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.b.get(i).copied())
    }

    /// Number of even characteristic values below the barrier top, `a_n < 2q`.
    pub fn bound_count(&self) -> usize {
        self.a.iter().filter(|&&a| a < 2.0 * self.q).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sector {
    EvenPeriodic,
    EvenAntiperiodic,
    OddAntiperiodic,
    OddPeriodic,
}

impl Sector {
    fn matrix(self, q: f64, size: usize) -> SymTridiagonal {
        let mut diag: Vec<f64> = (0..size)
            .map(|m| {
                let k = match self {
                    Sector::EvenPeriodic => 2 * m,
                    Sector::EvenAntiperiodic | Sector::OddAntiperiodic => 2 * m + 1,
                    Sector::OddPeriodic => 2 * m + 2,
                } as f64;
                k * k
            })
            .collect();
        let mut off = vec![q; size - 1];
        match self {
            Sector::EvenPeriodic => {
                if size > 1 {
                    off[0] = 2f64.sqrt() * q;
                }
            }
            Sector::EvenAntiperiodic => diag[0] += q,
            Sector::OddAntiperiodic => diag[0] -= q,
            Sector::OddPeriodic => {}
        }
        SymTridiagonal::new(diag, off).expect("sector matrix shape")
    }
}

/// Lowest `count` eigenvalues of one sector.
fn sector_values(sector: Sector, q: f64, size: usize, count: usize) -> Result<Vec<f64>> {
    let mut v = sector.matrix(q, size).eigenvalues()?;
    v.truncate(count);
    Ok(v)
}

fn solve_at(q: f64, n_max: usize, size: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n_even_a = n_max / 2 + 1;
    let n_odd_a = n_max.div_ceil(2);
    let n_odd_b = n_max.div_ceil(2);
    let n_even_b = n_max / 2;
    let ep = sector_values(Sector::EvenPeriodic, q, size, n_even_a)?;
    let ea = sector_values(Sector::EvenAntiperiodic, q, size, n_odd_a)?;
    let oa = sector_values(Sector::OddAntiperiodic, q, size, n_odd_b)?;
    let op = sector_values(Sector::OddPeriodic, q, size, n_even_b)?;
    let a = (0..=n_max)
        .map(|n| if n % 2 == 0 { ep[n / 2] } else { ea[n / 2] })
        .collect();
    let b = (1..=n_max)
        .map(|n| if n % 2 == 1 { oa[n / 2] } else { op[n / 2 - 1] })
        .collect();
    Ok((a, b))
}

fn initial_cutoff(q: f64, n_max: usize) -> usize {
    32.max(n_max + (4.0 * q.sqrt()).ceil() as usize)
}

fn max_shift(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// `a_0..=a_{n_max}` and `b_1..=b_{n_max}` of `y″ + (a − 2q cos 2v) y = 0`,
/// doubling the per-sector Fourier size until no requested value moves by
/// more than `tol`.
pub fn characteristic_values(q: f64, n_max: usize, tol: f64) -> Result<MathieuSpectrum> {
    characteristic_values_with_limit(q, n_max, tol, DEFAULT_MAX_CUTOFF)
}

pub fn characteristic_values_with_limit(
    q: f64,
    n_max: usize,
    tol: f64,
    max_cutoff: usize,
) -> Result<MathieuSpectrum> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::domain(
            "q",
            format!("must be finite and non-negative, got {q}"),
        ));
    }
    if n_max < 1 {
        return Err(Error::domain("n_max", "must be at least 1"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain("tol", format!("must be positive, got {tol}")));
    }
    let mut size = initial_cutoff(q, n_max).min(max_cutoff);
    let (mut a, mut b) = solve_at(q, n_max, size)?;
    let mut residual = f64::INFINITY;
    while size < max_cutoff {
        let next = (2 * size).min(max_cutoff);
        let (a2, b2) = solve_at(q, n_max, next)?;
        residual = max_shift(&a, &a2).max(max_shift(&b, &b2));
        size = next;
        a = a2;
        b = b2;
        if residual < tol {
            return Ok(MathieuSpectrum {
                q,
                a,
                b,
                cutoff: size,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        cutoff: size,
        residual,
    })
}

/// Lowest `n_bands` eigenvalues of the Bloch problem at each quasimomentum.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochBands {
    pub q: f64,
    pub nu_grid: Vec<f64>,
    /// `energies[i][n]` is band `n` at `nu_grid[i]`, in characteristic-value
    /// units.
    pub energies: Vec<Vec<f64>>,
}

impl BlochBands {
    /// `(min, max)` of band `n` over the sampled quasimomenta.
    pub fn band_range(&self, n: usize) -> (f64, f64) {
        self.energies
            .iter()
            .map(|row| row[n])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }
}

fn bloch_values(q: f64, nu: f64, half: usize, count: usize) -> Result<Vec<f64>> {
    let diag = (0..=2 * half)
        .map(|i| {
            let m = i as f64 - half as f64;
            (2.0 * m + nu).powi(2)
        })
        .collect();
    let t = SymTridiagonal::new(diag, vec![q; 2 * half])?;
    let mut v = t.eigenvalues()?;
    v.truncate(count);
    Ok(v)
}

/// Bloch spectrum `y(v + π) = e^{iπν} y(v)`: diagonal `(2m + ν)²`,
/// `m ∈ [−M, M]`, off-diagonal `q`.
pub fn band_structure(q: f64, nu_grid: &[f64], n_bands: usize) -> Result<BlochBands> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::domain(
            "q",
            format!("must be finite and non-negative, got {q}"),
        ));
    }
    if n_bands == 0 {
        return Err(Error::domain("n_bands", "must be at least 1"));
    }
    if let Some(&bad) = nu_grid.iter().find(|nu| !(0.0..=1.0).contains(*nu)) {
        return Err(Error::domain(
            "nu",
            format!("must lie in [0, 1], got {bad}"),
        ));
    }
    let max_half = DEFAULT_MAX_CUTOFF;
    let mut energies = Vec::with_capacity(nu_grid.len());
    for &nu in nu_grid {
        let mut half = initial_cutoff(q, n_bands).min(max_half);
        let mut cur = bloch_values(q, nu, half, n_bands)?;
        let mut converged = false;
        let mut residual = f64::INFINITY;
        while half < max_half {
            let next = (2 * half).min(max_half);
            let v = bloch_values(q, nu, next, n_bands)?;
            residual = max_shift(&cur, &v);
            half = next;
            cur = v;
            if residual < DEFAULT_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                cutoff: half,
                residual,
            });
        }
        energies.push(cur);
    }
    Ok(BlochBands {
        q,
        nu_grid: nu_grid.to_vec(),
        energies,
    })
}
