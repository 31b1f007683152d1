use std::f64::consts::PI;

/// Physicists' Hermite polynomial `H_n(y)` by the three-term recurrence
/// `H_{n+1} = 2y H_n − 2n H_{n−1}`.
///
/// Overflows for large `n` and `|y|`; orders up to 200 are fine for
/// `|y| ≲ 10`.
pub fn hermite_eval(n: usize, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * y;
    for k in 1..n {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized Hermite functions `h_k(y) = (2^k k! √π)^{-1/2} H_k(y) e^{−y²/2}`
/// for `k = 0..=n_max`.
///
/// Uses the normalized recurrence
/// `h_k = √(2/k) y h_{k−1} − √((k−1)/k) h_{k−2}`, which never forms the
/// factorial or the bare polynomial and so cannot overflow.
pub fn hermite_functions(n_max: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(PI.powf(-0.25) * (-0.5 * y * y).exp());
    if n_max >= 1 {
        out.push(2f64.sqrt() * y * out[0]);
    }
    for k in 2..=n_max {
        let kf = k as f64;
        let v = (2.0 / kf).sqrt() * y * out[k - 1] - ((kf - 1.0) / kf).sqrt() * out[k - 2];
        out.push(v);
    }
    out
}
