use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{io, Graph};
use crate::hset::{hset_with_cap, Discrete, HSetReport, Membership};
use crate::matrix::{PowerKind, PowerMap};
use crate::real::Real;

use super::{falsify, preserves, SampleConfig, SearchLimits, Verdict};

/// One probed `(alpha, kind)` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub alpha: Real,
    /// Membership in the closed-form set, when one was computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<Membership>,
    pub kind: PowerKind,
    pub preserved: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<String>,
    pub trials_run: usize,
}

impl ProbeRow {
    /// A power the closed form puts in the set was broken.
    pub fn is_disagreement(&self) -> bool {
        self.expected == Some(Membership::In) && !self.preserved
    }

    /// A power the closed form rules out survived the search.
    pub fn is_unconfirmed(&self) -> bool {
        self.expected == Some(Membership::Out) && self.preserved
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closed_form: Option<HSetReport>,
    pub disagreements: usize,
    /// Smallest grid point from which on every probed kind survived at
    /// every larger grid point; `None` if the largest point already failed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub empirical_ce: Option<Real>,
    pub graph: String,
    pub rows: Vec<ProbeRow>,
    pub unconfirmed: usize,
}

impl ProbeReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Step `0.25` on `(0, max(n - 2, 1)]`, plus `t ± 0.01` around every
/// positive ray start `t` of the closed form.
pub fn default_grid(g: &Graph, closed: Option<&HSetReport>) -> Vec<f64> {
    let top = g.vertex_count().saturating_sub(2).max(1);
    let mut grid: Vec<f64> = (1..=4 * top).map(|k| k as f64 / 4.0).collect();
    if let Some(rep) = closed {
        for kind in PowerKind::ALL {
            let t = rep.ce(kind);
            if t > 0.0 {
                grid.extend([t - 0.01, t + 0.01].into_iter().filter(|&a| a > 0.0));
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// [`falsify`] at every grid point for the given kinds, compared with the
/// closed form when it is computable within `limits.cap`.
pub fn probe_kinds(
    g: &Graph,
    alphas: &[f64],
    kinds: &[PowerKind],
    cfg: &SampleConfig,
    limits: &SearchLimits,
) -> Result<ProbeReport> {
    let closed = match hset_with_cap(g, limits.cap) {
        Ok(rep) => Some(rep),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut grid = alphas.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut rows = Vec::with_capacity(grid.len() * kinds.len());
    for &alpha in &grid {
        for &kind in kinds {
            let v = falsify(g, PowerMap::new(kind, alpha), cfg, None, limits)?;
            rows.push(ProbeRow {
                alpha: Real(alpha),
                expected: closed.as_ref().map(|rep| rep.get(kind).contains(alpha)),
                kind,
                preserved: v.preserved,
                source: v.counterexample.map(|cx| cx.source),
                trials_run: v.trials_run,
            });
        }
    }
    let mut empirical_ce = None;
    for &alpha in grid.iter().rev() {
        if rows.iter().filter(|r| r.alpha.0 == alpha).all(|r| r.preserved) {
            empirical_ce = Some(Real(alpha));
        } else {
            break;
        }
    }
    Ok(ProbeReport {
        disagreements: rows.iter().filter(|r| r.is_disagreement()).count(),
        unconfirmed: rows.iter().filter(|r| r.is_unconfirmed()).count(),
        closed_form: closed,
        empirical_ce,
        graph: io::write_edge_list(g),
        rows,
    })
}

/// [`probe_kinds`] over all three kinds with default search limits.
pub fn probe_hset(g: &Graph, alphas: &[f64], cfg: &SampleConfig) -> Result<ProbeReport> {
    probe_kinds(g, alphas, &PowerKind::ALL, cfg, &SearchLimits::default())
}

/// A check whose outcome contradicts the closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckIssue {
    pub alpha: Real,
    pub expected: Membership,
    pub kind: PowerKind,
    /// The counterexample matrix, when a claimed member was broken.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub checks_run: usize,
    pub closed_form: HSetReport,
    pub consistent: bool,
    pub graph: String,
    pub issues: Vec<CrossCheckIssue>,
    /// Powers outside a bounded set's upper bound that survived; no
    /// witness is known for them, so they do not count as issues.
    pub unconfirmed: Vec<CrossCheckIssue>,
}

impl CrossCheckReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn discrete_below(d: Discrete, ray: f64) -> Vec<f64> {
    (1..)
        .map(|k| k as f64)
        .take_while(|&a| a < ray)
        .filter(|&a| d.contains(a))
        .collect()
}

/// Tests the closed-form sets of `g` against the verifier.
///
/// * Members: the ray start of the certified part (and half a unit and a
///   unit above it) and the integers of the family below it must survive
///   [`preserves`].
/// * Non-members: for exact sets `ray - 0.25`, for bounded sets
///   `upper ray - 0.25` and every recorded exclusion, when positive and
///   not integers of the family, go to [`falsify`]. A survivor is an issue
///   for exact sets and an unconfirmed point for bounded ones.
pub fn cross_check(g: &Graph, cfg: &SampleConfig) -> Result<CrossCheckReport> {
    cross_check_with(g, cfg, &SearchLimits::default())
}

pub fn cross_check_with(g: &Graph, cfg: &SampleConfig, limits: &SearchLimits) -> Result<CrossCheckReport> {
    let closed = hset_with_cap(g, limits.cap)?;
    let mut issues = Vec::new();
    let mut unconfirmed = Vec::new();
    let mut checks_run = 0;
    for kind in PowerKind::ALL {
        let h = closed.get(kind);
        let d = Discrete::of_kind(kind);
        let ray = h.ray_start();

        let mut members: Vec<f64> = [ray, ray + 0.5, ray + 1.0]
            .into_iter()
            .filter(|&a| a > 0.0)
            .collect();
        members.extend(discrete_below(d, ray));
        for alpha in members {
            checks_run += 1;
            let v = preserves(g, PowerMap::new(kind, alpha), cfg, None)?;
            if !v.preserved {
                issues.push(issue(alpha, Membership::In, kind, &v, "claimed member was broken"));
            }
        }

        let mut outsiders: Vec<f64> = vec![h.upper().ray_start - 0.25];
        outsiders.extend(h.exclusions());
        outsiders.retain(|&a| a > 0.0 && !d.contains(a) && h.contains(a) == Membership::Out);
        for alpha in outsiders {
            checks_run += 1;
            let v = falsify(g, PowerMap::new(kind, alpha), cfg, None, limits)?;
            if v.preserved {
                let found = issue(alpha, Membership::Out, kind, &v, "no violation found for a claimed non-member");
                if h.is_exact() {
                    issues.push(found);
                } else {
                    unconfirmed.push(found);
                }
            }
        }
    }
    Ok(CrossCheckReport {
        checks_run,
        consistent: issues.is_empty(),
        closed_form: closed,
        graph: io::write_edge_list(g),
        issues,
        unconfirmed,
    })
}

fn issue(alpha: f64, expected: Membership, kind: PowerKind, v: &Verdict, reason: &str) -> CrossCheckIssue {
    CrossCheckIssue {
        alpha: Real(alpha),
        expected,
        kind,
        matrix: v.counterexample.as_ref().map(|cx| cx.matrix.clone()),
        reason: reason.to_string(),
    }
}
