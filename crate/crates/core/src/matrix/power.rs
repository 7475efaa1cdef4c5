use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{is_psd, PsdVerdict, SymMatrix};
use crate::error::{arg, Error, Result};

/// The three power families. Every family sends 0 to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PowerKind {
    /// `x^a` on nonnegative entries.
    #[serde(rename = "plain")]
    Plain,
    /// `sgn(x)|x|^a`.
    #[serde(rename = "psi")]
    OddPsi,
    /// `|x|^a`.
    #[serde(rename = "phi")]
    EvenPhi,
}

impl PowerKind {
    pub const ALL: [PowerKind; 3] = [PowerKind::Plain, PowerKind::OddPsi, PowerKind::EvenPhi];

    pub fn name(self) -> &'static str {
        match self {
            PowerKind::Plain => "plain",
            PowerKind::OddPsi => "psi",
            PowerKind::EvenPhi => "phi",
        }
    }
}

impl fmt::Display for PowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PowerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(PowerKind::Plain),
            "psi" | "odd_psi" | "odd" => Ok(PowerKind::OddPsi),
            "phi" | "even_phi" | "even" => Ok(PowerKind::EvenPhi),
            other => Err(arg(format!(
                "unknown power kind `{other}` (expected plain, psi or phi)"
            ))),
        }
    }
}

/// A power family together with its exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerMap {
    pub kind: PowerKind,
    pub alpha: f64,
}

impl PowerMap {
    pub fn new(kind: PowerKind, alpha: f64) -> Self {
        Self { kind, alpha }
    }

    /// Scalar map. Zero goes to zero for every exponent, including 0.
    /// Negative input to the plain family yields NaN.
    pub fn apply(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        match self.kind {
            PowerKind::Plain if x < 0.0 => f64::NAN,
            PowerKind::Plain => x.powf(self.alpha),
            PowerKind::OddPsi => x.signum() * x.abs().powf(self.alpha),
            PowerKind::EvenPhi => x.abs().powf(self.alpha),
        }
    }
}

impl fmt::Display for PowerMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.kind, self.alpha)
    }
}

/// Applies `p` to every entry.
pub fn entrywise_power(m: &SymMatrix, p: PowerMap) -> Result<SymMatrix> {
    if p.kind == PowerKind::Plain {
        if let Some((i, j, x)) = m.upper_entries().find(|&(_, _, x)| x < 0.0) {
            return Err(Error::Domain(format!(
                "plain power needs nonnegative entries; entry ({}, {}) is {x}",
                i + 1,
                j + 1
            )));
        }
    }
    let out = m.map(|x| p.apply(x));
    if !out.is_finite() {
        return Err(Error::Domain(format!(
            "power {p} overflows on a matrix with largest entry {}",
            m.max_abs()
        )));
    }
    Ok(out)
}

/// PSD verdict on `f[uuᵀ + vvᵀ] - f[uuᵀ] - f[vvᵀ]`.
pub fn superadditivity_gap(p: PowerMap, u: &[f64], v: &[f64]) -> Result<PsdVerdict> {
    if u.len() != v.len() || u.is_empty() {
        return Err(arg("superadditivity vectors must be nonempty and of equal length"));
    }
    let uu = SymMatrix::outer(u);
    let vv = SymMatrix::outer(v);
    let sum = entrywise_power(&uu.add(&vv)?, p)?;
    let gap = sum
        .sub(&entrywise_power(&uu, p)?)?
        .sub(&entrywise_power(&vv, p)?)?;
    is_psd(&gap, None)
}
