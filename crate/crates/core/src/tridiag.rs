//! Real symmetric tridiagonal eigenproblems by implicit QL with Wilkinson
//! shifts.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

/// Eigenpairs sorted by ascending eigenvalue; `vectors[i]` belongs to
/// `values[i]` and has unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::domain("diag", "matrix must be non-empty"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::domain(
                "off",
                format!("expected {} entries, got {}", diag.len() - 1, off.len()),
            ));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut d = self.diag.clone();
        ql_implicit(&mut d, self.padded_off(), None)?;
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    pub fn eigen(&self) -> Result<TridiagonalEigen> {
        let n = self.len();
        let mut d = self.diag.clone();
        // Row i of `z` is eigenvector i, so each rotation touches two
        // contiguous rows.
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        ql_implicit(&mut d, self.padded_off(), Some(&mut z))?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
        Ok(TridiagonalEigen {
            values: order.iter().map(|&i| d[i]).collect(),
            vectors: order
                .iter()
                .map(|&i| z[i * n..(i + 1) * n].to_vec())
                .collect(),
        })
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    fn padded_off(&self) -> Vec<f64> {
        let mut e = self.off.clone();
        e.push(0.0);
        e
    }
}

fn ql_implicit(d: &mut [f64], mut e: Vec<f64>, mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    cutoff: n,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zj = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zj.iter_mut()) {
                        let t = *b;
                        *b = s * *a + c * t;
                        *a = c * *a - s * t;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn dense(t: &SymTridiagonal) -> DMatrix<f64> {
        let n = t.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                t.diag()[i]
            } else if i + 1 == j {
                t.off()[i]
            } else if j + 1 == i {
                t.off()[j]
            } else {
                0.0
            }
        })
    }

    #[test]
    fn matches_dense_solver() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|m| (2.0 * m as f64).powi(2)).collect();
        let off = vec![7.5; n - 1];
        let t = SymTridiagonal::new(diag, off).unwrap();
        let mut reference: Vec<f64> = dense(&t)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        reference.sort_by(f64::total_cmp);
        for (a, b) in t.eigenvalues().unwrap().iter().zip(&reference) {
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn degenerate_spectrum_keeps_orthonormal_vectors() {
        let t = SymTridiagonal::new(vec![1.0, 1.0, 1.0, 1.0], vec![0.0, 0.0, 0.0]).unwrap();
        let eig = t.eigen().unwrap();
        for (i, u) in eig.vectors.iter().enumerate() {
            for (j, v) in eig.vectors.iter().enumerate() {
                let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn shape_errors() {
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
    }

    proptest! {
        #[test]
        fn eigenpairs_satisfy_definition(
            diag in prop::collection::vec(-50.0f64..50.0, 2..30),
            seed in prop::collection::vec(-5.0f64..5.0, 29),
        ) {
            let off = seed[..diag.len() - 1].to_vec();
            let t = SymTridiagonal::new(diag.clone(), off).unwrap();
            let eig = t.eigen().unwrap();
            let trace: f64 = diag.iter().sum();
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((trace - sum).abs() < 1e-9 * (1.0 + trace.abs()));
            for (lam, v) in eig.values.iter().zip(&eig.vectors) {
                let tv = t.apply(v);
                let resid = tv.iter().zip(v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
                prop_assert!(resid < 1e-10 * (1.0 + lam.abs()));
            }
            prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
