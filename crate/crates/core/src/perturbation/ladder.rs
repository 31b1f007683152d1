/// `(a + a†)^p |n⟩` expanded on the number basis, exactly (no truncation);
/// entry `m` is `⟨m|(a + a†)^p|n⟩`.
pub fn position_power_column(p: usize, n: usize) -> Vec<f64> {
    let len = n + p + 1;
    let mut v = vec![0.0; len];
    v[n] = 1.0;
    for _ in 0..p {
        let mut w = vec![0.0; len];
        for (m, &c) in v.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if m + 1 < len {
                w[m + 1] += (m as f64 + 1.0).sqrt() * c;
            }
            if m > 0 {
                w[m - 1] += (m as f64).sqrt() * c;
            }
        }
        v = w;
    }
    v
}

pub fn position_power_element(p: usize, m: usize, n: usize) -> f64 {
    position_power_column(p, n).get(m).copied().unwrap_or(0.0)
}

/// Dense `(a + a†)^p` on basis states `0..=n_max`. Every stored element is
/// exact; truncation only drops couplings to states above `n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl LadderMatrix {
    pub fn new(p: usize, n_max: usize) -> Self {
        let dim = n_max + 1;
        let mut data = vec![0.0; dim * dim];
        for n in 0..dim {
            for (m, v) in position_power_column(p, n)
                .into_iter()
                .enumerate()
                .take(dim)
            {
                data[m * dim + n] = v;
            }
        }
        LadderMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.data[m * self.dim + n]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}
