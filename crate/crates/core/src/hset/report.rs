use serde::{Deserialize, Serialize};

use super::sets::{HSet, HSetWire};
use crate::error::Result;
use crate::matrix::PowerKind;
use crate::real::Real;

/// Which result produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    CompleteFormula,
    ChordalFormula,
    Tree,
    Cycle,
    Bipartite,
    Coalescence,
    K2Union,
    TriangulationBounds,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::CompleteFormula => "complete_formula",
            Method::ChordalFormula => "chordal_formula",
            Method::Tree => "tree",
            Method::Cycle => "cycle",
            Method::Bipartite => "bipartite",
            Method::Coalescence => "coalescence",
            Method::K2Union => "k2_union",
            Method::TriangulationBounds => "triangulation_bounds",
        }
    }
}

/// Exponent sets of the three power families on one graph.
///
/// `ce(kind)` is the ray start of the certified part of the set; for exact
/// sets it is the critical exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportWire", try_from = "ReportWire")]
pub struct HSetReport {
    pub method: Method,
    pub omega: usize,
    pub r: usize,
    /// Largest separator of a perfect clique ordering (chordal graphs only).
    pub s: Option<usize>,
    pub plain: HSet,
    pub psi: HSet,
    pub phi: HSet,
}

impl HSetReport {
    pub fn get(&self, kind: PowerKind) -> &HSet {
        match kind {
            PowerKind::Plain => &self.plain,
            PowerKind::OddPsi => &self.psi,
            PowerKind::EvenPhi => &self.phi,
        }
    }

    pub fn get_mut(&mut self, kind: PowerKind) -> &mut HSet {
        match kind {
            PowerKind::Plain => &mut self.plain,
            PowerKind::OddPsi => &mut self.psi,
            PowerKind::EvenPhi => &mut self.phi,
        }
    }

    pub fn ce(&self, kind: PowerKind) -> f64 {
        self.get(kind).ray_start()
    }

    pub fn is_exact(&self) -> bool {
        PowerKind::ALL.iter().all(|&k| self.get(k).is_exact())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Triple<T> {
    phi: T,
    plain: T,
    psi: T,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ReportWire {
    ce: Triple<Real>,
    hsets: Triple<HSetWire>,
    method: Method,
    omega: usize,
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    s: Option<usize>,
}

impl From<HSetReport> for ReportWire {
    fn from(rep: HSetReport) -> Self {
        ReportWire {
            ce: Triple {
                phi: Real(rep.phi.ray_start()),
                plain: Real(rep.plain.ray_start()),
                psi: Real(rep.psi.ray_start()),
            },
            hsets: Triple {
                phi: HSetWire::from_set(&rep.phi),
                plain: HSetWire::from_set(&rep.plain),
                psi: HSetWire::from_set(&rep.psi),
            },
            method: rep.method,
            omega: rep.omega,
            r: rep.r,
            s: rep.s,
        }
    }
}

impl TryFrom<ReportWire> for HSetReport {
    type Error = String;

    fn try_from(w: ReportWire) -> std::result::Result<Self, String> {
        let rep = HSetReport {
            method: w.method,
            omega: w.omega,
            r: w.r,
            s: w.s,
            plain: w.hsets.plain.into_set(PowerKind::Plain)?,
            psi: w.hsets.psi.into_set(PowerKind::OddPsi)?,
            phi: w.hsets.phi.into_set(PowerKind::EvenPhi)?,
        };
        for (kind, ce) in [
            (PowerKind::Plain, w.ce.plain),
            (PowerKind::OddPsi, w.ce.psi),
            (PowerKind::EvenPhi, w.ce.phi),
        ] {
            if rep.ce(kind) != ce.0 {
                return Err(format!("ce.{kind} disagrees with its set"));
            }
        }
        Ok(rep)
    }
}
