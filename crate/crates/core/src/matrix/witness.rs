//! Matrices in small sparsity cones whose entrywise powers lose positivity.

use std::f64::consts::PI;

use super::SymMatrix;
use crate::error::{arg, Result};

/// The bordered matrix
///
/// ```text
/// [ 1  uᵀ   0 ]
/// [ u  mid  v ]
/// [ 0  vᵀ   1 ]
/// ```
///
/// With `mid = uuᵀ + vvᵀ` it is PSD and its pattern is `K_{m+2}` minus the
/// edge between the first and last index.
pub fn witness_w(u: &[f64], v: &[f64], mid: &SymMatrix) -> Result<SymMatrix> {
    let m = u.len();
    if v.len() != m || mid.dim() != m {
        return Err(arg(format!(
            "W needs |u| = |v| = dim(mid); got {}, {}, {}",
            m,
            v.len(),
            mid.dim()
        )));
    }
    let last = m + 1;
    Ok(SymMatrix::from_fn(m + 2, |i, j| match (i, j) {
        (0, 0) => 1.0,
        (0, j) if j == last => 0.0,
        (0, j) => u[j - 1],
        (i, j) if i == last && j == last => 1.0,
        (i, j) if j == last => v[i - 1],
        (i, j) => mid.get(i - 1, j - 1),
    }))
}

/// `[[1, a, 0], [a, 1, √(1-a²)], [0, √(1-a²), 1]]`, singular and PSD for
/// `a ∈ [0, 1]`. Its `f`-image has determinant `1 - f(a)² - f(√(1-a²))²`.
pub fn witness_path3(a: f64) -> Result<SymMatrix> {
    if !(0.0..=1.0).contains(&a) {
        return Err(arg(format!("path witness needs a in [0, 1], got {a}")));
    }
    let b = (1.0 - a * a).sqrt();
    SymMatrix::from_rows(&[vec![1.0, a, 0.0], vec![a, 1.0, b], vec![0.0, b, 1.0]])
}

/// `(cos((j - k)π/n))_{j,k}` for even `n >= 4`, a rank-two PSD matrix.
/// Entries with `|j - k| = n/2` are set to an exact zero.
pub fn witness_cosine(n: usize) -> Result<SymMatrix> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(arg(format!("cosine witness needs even n >= 4, got {n}")));
    }
    Ok(SymMatrix::from_fn(n, |j, k| {
        let d = k - j;
        if d == n / 2 {
            0.0
        } else {
            (d as f64 * PI / n as f64).cos()
        }
    }))
}

/// `I + c·S` on the cycle `0, 1, ..., n-1` with `c = 1/(2cos(π/n))`,
/// where `S` is the adjacency matrix, with the edge `{0, n-1}` negated
/// when `n` is even.
///
/// The matrix is PSD and singular, and `ψ_a` breaks it for every `a < 1`.
/// For even `n` its absolute value `I + c·|S|` is not PSD.
pub fn witness_signed_cycle(n: usize) -> Result<SymMatrix> {
    if n < 3 {
        return Err(arg(format!("signed cycle witness needs n >= 3, got {n}")));
    }
    let c = 1.0 / (2.0 * (PI / n as f64).cos());
    Ok(SymMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else if j == i + 1 {
            c
        } else if i == 0 && j == n - 1 {
            if n.is_multiple_of(2) {
                -c
            } else {
                c
            }
        } else {
            0.0
        }
    }))
}
