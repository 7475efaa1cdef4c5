//! Numerical checks of exponent-set claims.
//!
//! A power is declared *not preserved* only with a certificate: a matrix of
//! `P_G` whose powered image fails the PSD test, serialized so it can be
//! re-checked on its own. *Preserved* means no counterexample turned up in
//! the trials that were run, nothing more.

mod probe;
mod sampler;
mod search;
mod superadditive;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::graph::{io, Graph};
use crate::matrix::{entrywise_power, in_cone, is_psd, PowerKind, PowerMap, PsdVerdict, SymMatrix};
use crate::real::Real;

pub use probe::{
    cross_check, cross_check_with, default_grid, probe_hset, probe_kinds, CrossCheckIssue, CrossCheckReport, ProbeReport,
    ProbeRow,
};
pub use sampler::{sample_cone, trial_rng, ConeSampler, Factor, FactorModel};
pub use search::{coordinate_descent, falsify, preserves, SearchLimits};
pub use superadditive::{superadditive_falsify, SuperadditiveViolation};

/// Which sources of candidate matrices a check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Random clique-sum samples only.
    CliqueSum,
    /// Structured witnesses only.
    WitnessBank,
    /// Witnesses first, then random samples.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub trials: usize,
    pub strategy: Strategy,
    pub entry_scale: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            strategy: Strategy::Mixed,
            entry_scale: 1.0,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(arg("trials must be at least 1"));
        }
        if !(self.entry_scale > 0.0 && self.entry_scale.is_finite()) {
            return Err(arg("entry scale must be positive and finite"));
        }
        Ok(())
    }

    pub fn uses_witnesses(&self) -> bool {
        self.strategy != Strategy::CliqueSum
    }

    pub fn uses_random(&self) -> bool {
        self.strategy != Strategy::WitnessBank
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSpec {
    pub alpha: Real,
    pub kind: PowerKind,
}

impl From<PowerMap> for PowerSpec {
    fn from(p: PowerMap) -> Self {
        Self {
            alpha: Real(p.alpha),
            kind: p.kind,
        }
    }
}

impl PowerSpec {
    pub fn power_map(&self) -> PowerMap {
        PowerMap::new(self.kind, self.alpha.0)
    }
}

/// A matrix of `P_G` whose powered image is not PSD.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// The matrix in the text format (scaled to largest entry 1).
    pub matrix: String,
    /// Name of the witness or search that produced it.
    pub source: String,
    /// PSD test of the powered matrix.
    pub verdict: PsdVerdict,
}

impl Counterexample {
    pub fn parse_matrix(&self) -> Result<SymMatrix> {
        SymMatrix::parse_text(&self.matrix)
    }
}

/// Outcome of [`preserves`] or [`falsify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    /// The graph in the edge-list format.
    pub graph: String,
    pub power: PowerSpec,
    pub preserved: bool,
    /// Explicit PSD tolerance, or `None` for the default relative one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<Real>,
    pub trials_run: usize,
    pub witnesses_tried: Vec<String>,
}

impl Verdict {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Scales `a` to largest entry 1 (when nonzero). Powers commute with
/// positive scaling up to a positive factor, so verdicts are unchanged.
pub(crate) fn normalize(a: &SymMatrix) -> SymMatrix {
    let s = a.max_abs();
    if s > 0.0 && s != 1.0 {
        a.scale(1.0 / s)
    } else {
        a.clone()
    }
}

/// PSD test of `p` applied to `a`.
pub fn evaluate(a: &SymMatrix, p: PowerMap, tol: Option<f64>) -> Result<PsdVerdict> {
    is_psd(&entrywise_power(a, p)?, tol)
}

/// Result of re-checking a serialized counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplayOutcome {
    /// The matrix lies in `P_G` and its powered image fails the PSD test.
    pub confirmed: bool,
    pub in_cone: bool,
    pub verdict: Option<PsdVerdict>,
}

/// Re-checks a verdict's counterexample from its serialized fields alone.
pub fn replay(v: &Verdict) -> Result<ReplayOutcome> {
    let g: Graph = io::parse_edge_list(&v.graph)?;
    let Some(cx) = &v.counterexample else {
        return Ok(ReplayOutcome {
            confirmed: false,
            in_cone: false,
            verdict: None,
        });
    };
    let a = cx.parse_matrix()?;
    let member = in_cone(&a, &g, None)?;
    let verdict = evaluate(&a, v.power.power_map(), v.tolerance.map(|t| t.0))?;
    Ok(ReplayOutcome {
        confirmed: member && !verdict.is_psd,
        in_cone: member,
        verdict: Some(verdict),
    })
}
