use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::model::{hermite_functions, ln_factorial, SpatialGrid, WavefunctionField};

/// Largest tolerated ratio of a correction term to the leading `D_n` term.
pub const VALIDITY_RATIO: f64 = 0.5;

/// The three pieces of the deep-lattice series for `ce_n`, sampled at the
/// Mathieu variable `v`: leading `D_n`, the `1/√q` and the `1/q` corrections.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenkelTerms {
    pub leading: Vec<f64>,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl FrenkelTerms {
    pub fn total(&self) -> Vec<f64> {
        self.leading
            .iter()
            .zip(&self.first)
            .zip(&self.second)
            .map(|((a, b), c)| a + b + c)
            .collect()
    }

    /// `max(‖first‖, ‖second‖) / ‖leading‖` over the samples.
    pub fn correction_ratio(&self) -> f64 {
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        norm(&self.first).max(norm(&self.second)) / norm(&self.leading)
    }
}

/// `D_k(α) = 2^{−k/2} e^{−α²/4} H_k(α/√2)` for `k = 0..=k_max`, built from
/// normalized Hermite functions so large `k` cannot overflow.
fn parabolic_d(k_max: usize, alpha: f64) -> Vec<f64> {
    hermite_functions(k_max, alpha / 2f64.sqrt())
        .into_iter()
        .enumerate()
        .map(|(k, h)| h * (0.5 * (ln_factorial(k) + 0.5 * PI.ln())).exp())
        .collect()
}

fn poly(n: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * n + c)
}

pub fn frenkel_terms(n: usize, q: f64, v: &[f64]) -> FrenkelTerms {
    let nf = n as f64;
    let c_m4 = poly(nf, &[0.0, -6.0, 11.0, -6.0, 1.0]);
    let c_m2 = 4.0 * nf - 4.0 * nf * nf;
    let p8 = poly(
        nf,
        &[
            0.0, -5040.0, 13068.0, -13132.0, 6769.0, -1960.0, 322.0, -28.0, 1.0,
        ],
    ) / 8.0;
    let p6 = poly(nf, &[0.0, -120.0, 274.0, -225.0, 85.0, -15.0, 1.0]);
    let p5 = 4.0 * poly(nf, &[0.0, 6.0, -17.0, 17.0, -7.0, 1.0]);
    let p2 = poly(nf, &[0.0, 10.0, -37.0, 26.0, 1.0]);
    let up2 = nf * nf - 25.0 * nf - 36.0;
    let up4 = 4.0 * (nf + 2.0);
    let s1 = 1.0 / (64.0 * q.sqrt());
    let s2 = 1.0 / (1024.0 * q);
    let qq = q.powf(0.25);

    let mut terms = FrenkelTerms {
        leading: Vec::with_capacity(v.len()),
        first: Vec::with_capacity(v.len()),
        second: Vec::with_capacity(v.len()),
    };
    for &vi in v {
        let d = parabolic_d(n + 8, 2.0 * qq * vi.cos());
        let at = |offset: i64| -> f64 {
            let k = n as i64 + offset;
            if k < 0 {
                0.0
            } else {
                d[k as usize]
            }
        };
        terms.leading.push(at(0));
        terms
            .first
            .push(s1 * (c_m4 * at(-4) + c_m2 * at(-2) - 4.0 * at(2) - at(4)));
        terms.second.push(
            s2 * (p8 * at(-8) - p6 * at(-6) + p5 * at(-4) - p2 * at(-2) + up2 * at(2)
                - up4 * at(4)
                + at(6)
                + at(8) / 8.0),
        );
    }
    terms
}

/// `C_n` such that `C_n ce_n` integrates to `π` over one `2π` period of `v`.
pub fn frenkel_norm_factor(n: usize, q: f64) -> f64 {
    let nf = n as f64;
    let rq = q.sqrt();
    let series = 1.0
        + (2.0 * nf + 1.0) / (8.0 * rq)
        + poly(nf, &[108.0, 262.0, 263.0, 2.0, 1.0]) / (2048.0 * q)
        + poly(nf, &[572.0, 1778.0, 1905.0, 1280.0, 15.0, 6.0]) / (16384.0 * q * rq);
    let ln_inv_c2 = 0.5 * 2f64.ln() + ln_factorial(n) - 0.5 * PI.ln() - 0.25 * q.ln() + series.ln();
    (-0.5 * ln_inv_c2).exp()
}

/// Deep-lattice even Mathieu function `ce_n` on the canonical grid
/// (`v = x + π/2`), through order `1/q`, normalized on the grid.
pub fn asymptotic_ce(n: usize, q: f64, grid: &SpatialGrid) -> Result<WavefunctionField> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::domain("q", format!("must be positive, got {q}")));
    }
    let v: Vec<f64> = grid.points().iter().map(|x| x + FRAC_PI_2).collect();
    let terms = frenkel_terms(n, q, &v);
    let ratio = terms.correction_ratio();
    if !(ratio < VALIDITY_RATIO) {
        return Err(Error::AsymptoticInvalid { ratio });
    }
    let c = frenkel_norm_factor(n, q);
    let values: Vec<f64> = terms.total().iter().map(|y| c * y).collect();
    let mut field = WavefunctionField::from_real(*grid, &values)?;
    field.fix_phase();
    Ok(field)
}
