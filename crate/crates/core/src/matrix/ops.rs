use nalgebra::{Cholesky, DMatrix};

use super::SymMatrix;
use crate::error::{arg, Error, Result};

/// Default diagonal shift when a split needs regularizing.
pub const DEFAULT_SPLIT_EPS: f64 = 1e-8;

/// Schur complement of the pivot `a_vv`: the `(n-1)`-dimensional matrix
/// `a_ij - a_iv a_vj / a_vv` over the remaining indices, in order.
pub fn matrix_schur_complement(m: &SymMatrix, v: usize) -> Result<SymMatrix> {
    let n = m.dim();
    if v >= n {
        return Err(arg(format!("pivot {v} out of range for dimension {n}")));
    }
    let pivot = m.get(v, v);
    if pivot == 0.0 {
        return Err(Error::Domain(format!("zero pivot at ({}, {})", v + 1, v + 1)));
    }
    let rest: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    Ok(SymMatrix::from_fn(n - 1, |a, b| {
        let (i, j) = (rest[a], rest[b]);
        m.get(i, j) - m.get(i, v) * m.get(v, j) / pivot
    }))
}

/// `M = M1 + M2` with `M1` supported on `A ∪ C` and `M2` on `C ∪ B`.
#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    pub m1: SymMatrix,
    pub m2: SymMatrix,
    /// Diagonal shift added before splitting (0 when none was needed);
    /// `m1 + m2 = m + regularization · I`.
    pub regularization: f64,
}

fn check_partition(n: usize, parts: [&[usize]; 3]) -> Result<()> {
    let mut owner = vec![false; n];
    for part in parts {
        for &v in part {
            if v >= n {
                return Err(arg(format!("index {v} out of range for dimension {n}")));
            }
            if owner[v] {
                return Err(arg(format!("index {v} appears twice in the partition")));
            }
            owner[v] = true;
        }
    }
    if owner.iter().any(|&o| !o) {
        return Err(arg("sets do not cover every index"));
    }
    Ok(())
}

/// Splits a PSD matrix whose `A × B` block vanishes into two PSD parts,
/// through the Schur complement of `M_AA`. If `M_AA` is singular (or too
/// close to it for a stable factorization) the whole matrix is shifted by
/// `eps · I` first.
pub fn split_decomposition(
    m: &SymMatrix,
    a: &[usize],
    c: &[usize],
    b: &[usize],
    eps: f64,
) -> Result<SplitDecomposition> {
    let n = m.dim();
    check_partition(n, [a, c, b])?;
    if a.is_empty() || b.is_empty() {
        return Err(arg("split needs nonempty A and B"));
    }
    if !(eps > 0.0) {
        return Err(arg(format!("regularization must be positive, got {eps}")));
    }
    for &i in a {
        for &j in b {
            if m.get(i, j) != 0.0 {
                return Err(Error::Domain(format!(
                    "entry ({}, {}) links A and B, so C does not separate them",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    let threshold = 1e-12 * m.max_abs().max(1.0);
    let factor = |shift: f64| -> Option<Cholesky<f64, nalgebra::Dyn>> {
        let mut aa = m.submatrix(a).to_dense();
        for k in 0..a.len() {
            aa[(k, k)] += shift;
        }
        let chol = Cholesky::new(aa)?;
        let min_pivot = chol.l_dirty().diagonal().iter().fold(f64::INFINITY, |acc, &x| acc.min(x));
        (min_pivot * min_pivot > threshold).then_some(chol)
    };
    let (chol, regularization) = match factor(0.0) {
        Some(ch) => (ch, 0.0),
        None => (
            factor(eps).ok_or_else(|| {
                Error::Domain("M_AA is not positive semidefinite".into())
            })?,
            eps,
        ),
    };

    let mt = if regularization > 0.0 {
        m.add(&SymMatrix::identity(n).scale(regularization))?
    } else {
        m.clone()
    };
    let ac = DMatrix::from_fn(a.len(), c.len(), |i, j| mt.get(a[i], c[j]));
    let y = chol
        .l()
        .solve_lower_triangular(&ac)
        .expect("Cholesky factor is invertible");
    let x = y.transpose() * &y;

    let mut m1 = SymMatrix::zeros(n);
    let mut m2 = SymMatrix::zeros(n);
    for (ia, &i) in a.iter().enumerate() {
        for &j in &a[ia..] {
            m1.set(i, j, mt.get(i, j));
        }
        for &j in c {
            m1.set(i, j, mt.get(i, j));
        }
    }
    for (ic, &i) in c.iter().enumerate() {
        for (jc, &j) in c.iter().enumerate().skip(ic) {
            m1.set(i, j, x[(ic, jc)]);
            m2.set(i, j, mt.get(i, j) - x[(ic, jc)]);
        }
        for &j in b {
            m2.set(i, j, mt.get(i, j));
        }
    }
    for (ib, &i) in b.iter().enumerate() {
        for &j in &b[ib..] {
            m2.set(i, j, mt.get(i, j));
        }
    }
    Ok(SplitDecomposition {
        m1,
        m2,
        regularization,
    })
}

/// `D M D` for the diagonal matrix `D = diag(d)`, `d > 0`.
pub fn diagonal_conjugate(m: &SymMatrix, d: &[f64]) -> Result<SymMatrix> {
    if d.len() != m.dim() {
        return Err(arg("scaling vector length differs from the dimension"));
    }
    if d.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(arg("scaling vector must be positive and finite"));
    }
    Ok(SymMatrix::from_fn(m.dim(), |i, j| d[i] * m.get(i, j) * d[j]))
}

/// Writes `m = D C D` with `C` unit-diagonal; returns `C` and `d = √diag(m)`.
pub fn to_correlation(m: &SymMatrix) -> Result<(SymMatrix, Vec<f64>)> {
    let n = m.dim();
    if let Some(i) = (0..n).find(|&i| !(m.get(i, i) > 0.0)) {
        return Err(Error::Domain(format!(
            "diagonal entry {} is not positive",
            i + 1
        )));
    }
    let d: Vec<f64> = (0..n).map(|i| m.get(i, i).sqrt()).collect();
    let c = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            m.get(i, j) / (d[i] * d[j])
        }
    });
    Ok((c, d))
}
