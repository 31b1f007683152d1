use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ln_factorial;

/// Small-`q` expansion
/// `a ≈ n² + q²/(2(n²−1)) + (5n²+7)q⁴/(32(n²−1)³(n²−4))`.
///
/// Accepts non-integral `n` (the half-integer orders are meaningful too).
pub fn asymptotic_a_small_q(n: f64, q: f64) -> Result<f64> {
    if !(n.is_finite() && n >= 2.0) {
        return Err(Error::domain("n", format!("must be at least 2, got {n}")));
    }
    let n2 = n * n;
    let d1 = n2 - 1.0;
    let d4 = n2 - 4.0;
    if d1 == 0.0 || d4 == 0.0 {
        return Err(Error::domain("n", format!("zero denominator at n = {n}")));
    }
    let q2 = q * q;
    Ok(n2 + q2 / (2.0 * d1) + (5.0 * n2 + 7.0) * q2 * q2 / (32.0 * d1.powi(3) * d4))
}

/// Large-`q` expansion with `s = 2n + 1`:
/// `a ≈ −2q + 2s√q − (s²+1)/8 − (s³+3s)/(2⁷√q)`.
pub fn asymptotic_a_large_q(n: usize, q: f64) -> f64 {
    let s = (2 * n + 1) as f64;
    let rq = q.sqrt();
    -2.0 * q + 2.0 * s * rq - (s * s + 1.0) / 8.0 - (s.powi(3) + 3.0 * s) / (128.0 * rq)
}

/// Magnitude of the first term dropped by [`asymptotic_a_large_q`],
/// `(5s⁴ + 34s² + 9)/(2¹² q)`.
pub fn large_q_next_term(n: usize, q: f64) -> f64 {
    let s = (2 * n + 1) as f64;
    (5.0 * s.powi(4) + 34.0 * s * s + 9.0) / (4096.0 * q)
}

/// Width `b_{n+1} − a_n` of band `n` for deep lattices,
/// `2^{4n+5} √(2/π) q^{n/2+3/4} e^{−4√q} / n!`, evaluated in log space.
pub fn band_width_asymptotic(n: usize, q: f64) -> f64 {
    let nf = n as f64;
    let ln = (4.0 * nf + 5.0) * 2f64.ln() + 0.5 * (2.0 / PI).ln() + (0.5 * nf + 0.75) * q.ln()
        - 4.0 * q.sqrt()
        - ln_factorial(n);
    ln.exp()
}

/// Hopping amplitude over recoil energy for a lattice `v` recoils deep,
/// `(4/√π) v^{3/4} e^{−2√v}`.
#[allow(non_snake_case)]
pub fn tunneling_J_over_recoil(depth_over_recoil: f64) -> Result<f64> {
    let v = depth_over_recoil;
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::domain(
            "depth_over_recoil",
            format!("must be positive, got {v}"),
        ));
    }
    Ok(4.0 / PI.sqrt() * v.powf(0.75) * (-2.0 * v.sqrt()).exp())
}

/// Lattice depth in recoil units for Mathieu parameter `q`, `V₀/E_R = 8q`.
///
/// Assumes the scaled recoil energy is `k̄²/8` in the units of
/// `H = p²/2 − V₀cos 2x`. Treat as a convenience, not a derived identity.
pub fn depth_over_recoil_from_q(q: f64) -> f64 {
    8.0 * q
}
