use crate::model::LatticeParams;

/// Expansion of `−V₀ cos 2x` about the well bottom,
/// `U(x) = U(0) + Σ_j G⁽ʲ⁾ xʲ`, through `j = 8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorCoefficients {
    /// `U(r_m) = −V₀`.
    pub u_min: f64,
    g: [f64; 9],
}

impl TaylorCoefficients {
    /// `G⁽ʲ⁾`; zero for odd `j` and for `j > 8`.
    pub fn g(&self, j: usize) -> f64 {
        self.g.get(j).copied().unwrap_or(0.0)
    }
}

/// `G⁽²ᵏ⁾ = (−1)^{k+1} 4^k V₀ / (2k)!`.
pub fn taylor_coefficients(params: &LatticeParams) -> TaylorCoefficients {
    let v0 = params.v0();
    let mut g = [0.0; 9];
    let mut fact = 1.0;
    for j in 1..=8 {
        fact *= j as f64;
        if j % 2 == 0 {
            let k = j / 2;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            g[j] = sign * 4f64.powi(k as i32) * v0 / fact;
        }
    }
    TaylorCoefficients { u_min: -v0, g }
}
