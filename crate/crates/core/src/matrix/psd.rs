use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use super::SymMatrix;
use crate::error::{arg, Result};
use crate::graph::Graph;
use crate::real::Real;

/// Outcome of a positive semidefiniteness test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    /// Unit eigenvector for the smallest eigenvalue, present when the test fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Vec<Real>>,
    pub is_psd: bool,
    pub min_eigenvalue: Real,
    pub tolerance_used: Real,
}

impl PsdVerdict {
    pub fn certificate_vector(&self) -> Option<Vec<f64>> {
        self.certificate
            .as_ref()
            .map(|c| c.iter().map(|x| x.0).collect())
    }
}

/// `1e-9 · max(1, max |a_ij|)`.
pub fn default_tolerance(m: &SymMatrix) -> f64 {
    1e-9 * m.max_abs().max(1.0)
}

/// Positive semidefinite iff the smallest eigenvalue is at least `-tol`.
/// `None` selects [`default_tolerance`].
pub fn is_psd(m: &SymMatrix, tol: Option<f64>) -> Result<PsdVerdict> {
    if !m.is_finite() {
        return Err(arg("matrix has non-finite entries"));
    }
    let tol = tol.unwrap_or_else(|| default_tolerance(m));
    if !(tol >= 0.0) {
        return Err(arg(format!("tolerance must be nonnegative, got {tol}")));
    }
    if m.dim() == 0 {
        return Ok(PsdVerdict {
            certificate: None,
            is_psd: true,
            min_eigenvalue: Real(0.0),
            tolerance_used: Real(tol),
        });
    }
    let eig = SymmetricEigen::new(m.to_dense());
    let (k, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty spectrum");
    let is_psd = lambda >= -tol;
    let certificate = (!is_psd).then(|| {
        let v = eig.eigenvectors.column(k);
        let norm = v.norm();
        v.iter().map(|x| Real(x / norm)).collect()
    });
    Ok(PsdVerdict {
        certificate,
        is_psd,
        min_eigenvalue: Real(lambda),
        tolerance_used: Real(tol),
    })
}

/// Membership in `P_G`: PSD, and exactly zero off the edges of `g`.
pub fn in_cone(m: &SymMatrix, g: &Graph, tol: Option<f64>) -> Result<bool> {
    if m.dim() != g.vertex_count() {
        return Err(arg(format!(
            "matrix dimension {} does not match {} vertices",
            m.dim(),
            g.vertex_count()
        )));
    }
    let pattern_ok = m
        .upper_entries()
        .all(|(i, j, x)| i == j || x == 0.0 || g.has_edge(i, j));
    Ok(pattern_ok && is_psd(m, tol)?.is_psd)
}
