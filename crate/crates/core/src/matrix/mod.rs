//! Dense symmetric matrices, entrywise powers and positivity tests.

mod ops;
mod power;
mod psd;
mod witness;

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{arg, Error, Result};

pub use ops::{
    diagonal_conjugate, matrix_schur_complement, split_decomposition, to_correlation,
    SplitDecomposition, DEFAULT_SPLIT_EPS,
};
pub use power::{entrywise_power, superadditivity_gap, PowerKind, PowerMap};
pub use psd::{default_tolerance, in_cone, is_psd, PsdVerdict};
pub use witness::{witness_cosine, witness_path3, witness_signed_cycle, witness_w};

/// Tolerance used when reading a matrix to decide it is symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric matrix stored as its packed upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Rank-one matrix `u uᵀ`.
    pub fn outer(u: &[f64]) -> Self {
        Self::from_fn(u.len(), |i, j| u[i] * u[j])
    }

    /// Full square rows; asymmetry up to [`SYMMETRY_TOL`] (relative to the
    /// largest entry) is averaged away, anything larger is rejected.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(arg(format!(
                "row {} has {} entries, expected {n}",
                bad + 1,
                rows[bad].len()
            )));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(arg("matrix entries must be finite"));
        }
        let scale = rows.iter().flatten().fold(1.0f64, |acc, x| acc.max(x.abs()));
        for i in 0..n {
            for j in i + 1..n {
                if (rows[i][j] - rows[j][i]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::Validation(format!(
                        "matrix is not symmetric at ({}, {}): {} vs {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        rows[j][i]
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| {
            if i == j {
                rows[i][i]
            } else {
                0.5 * (rows[i][j] + rows[j][i])
            }
        }))
    }

    /// Symmetrizes a dense matrix by averaging it with its transpose.
    pub fn from_dense(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(arg("dense matrix must be square"));
        }
        Ok(Self::from_fn(m.nrows(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)])))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(j < self.n, "index ({i}, {j}) out of range for dimension {}", self.n);
        i * self.n - i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.index(i, j)]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        let k = self.index(i, j);
        self.data[k] = x;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Upper-triangle entries `(i, j, a_ij)` with `i <= j`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i..n).map(move |j| (i, j)))
            .zip(self.data.iter().copied())
            .map(|((i, j), x)| (i, j, x))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.n != other.n {
            return Err(arg(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|x| c * x)
    }

    /// `uᵀ M u`.
    pub fn quadratic_form(&self, u: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, j, x) in self.upper_entries() {
            let w = if i == j { 1.0 } else { 2.0 };
            acc += w * x * u[i] * u[j];
        }
        acc
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Places `self` at rows/columns `idx` of an `n × n` zero matrix.
    pub fn embed(&self, n: usize, idx: &[usize]) -> Result<Self> {
        if idx.len() != self.n || idx.iter().any(|&i| i >= n) {
            return Err(arg("embedding indices do not match the matrix"));
        }
        let mut out = Self::zeros(n);
        for (a, b, x) in self.upper_entries() {
            out.set(idx[a], idx[b], x);
        }
        Ok(out)
    }

    /// Largest `|a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// The text format: `n`, then `n` rows of `n` numbers. Values are
    /// written so that parsing them back is exact.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:?}", self.get(i, j))).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty matrix text".into(),
        })?;
        let n: usize = first.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad dimension `{first}`"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (line, l) in lines {
            if rows.len() == n {
                return Err(Error::Parse {
                    line,
                    message: format!("more than {n} rows"),
                });
            }
            let row = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad number `{t}`"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != n {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Self::from_rows(&rows)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_text(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_storage_is_symmetric() {
        let mut m = SymMatrix::zeros(3);
        m.set(2, 0, 5.0);
        assert_eq!(m.get(0, 2), 5.0);
        m.set(1, 1, -1.0);
        assert_eq!(m.to_dense()[(1, 1)], -1.0);
        assert_eq!(m.upper_entries().count(), 6);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let m = SymMatrix::from_fn(3, |i, j| (i as f64 + 0.1) / (j as f64 + 3.0) + 1e-300);
        let back = SymMatrix::parse_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn reader_checks_symmetry_and_shape() {
        assert!(matches!(
            SymMatrix::parse_text("2\n1 0.5\n0.4 1\n"),
            Err(Error::Validation(_))
        ));
        let m = SymMatrix::parse_text("2\n1 0.5\n0.5000000000000001 1\n").unwrap();
        assert!((m.get(0, 1) - 0.5).abs() < 1e-15);
        assert!(matches!(
            SymMatrix::parse_text("2\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            SymMatrix::parse_text("2\n1 0 0\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn embed_and_submatrix_invert() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let big = m.embed(4, &[3, 1]).unwrap();
        assert_eq!(big.get(3, 1), 1.0);
        assert_eq!(big.get(3, 3), 2.0);
        assert_eq!(big.get(0, 0), 0.0);
        assert_eq!(big.submatrix(&[3, 1]), m);
    }

    #[test]
    fn quadratic_form_matches_dense() {
        let m = SymMatrix::from_fn(4, |i, j| (i * 3 + j) as f64 - 4.0);
        let u = [0.5, -1.0, 2.0, 0.25];
        let d = m.to_dense();
        let v = nalgebra::DVector::from_column_slice(&u);
        assert!((m.quadratic_form(&u) - v.dot(&(&d * &v))).abs() < 1e-12);
    }
}
