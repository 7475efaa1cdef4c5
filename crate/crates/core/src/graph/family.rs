use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with canonical labelings.
///
/// Written inline as `name:params`, e.g. `band:8,3` or `split:4,2,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete { n: usize },
    /// `K_n` with the edge between the first and last vertex removed.
    CompleteMinusEdge { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// `K_{1,leaves}`, centre is vertex 0.
    Star { leaves: usize },
    /// Part A is `0..m`, part B is `m..m+n`.
    CompleteBipartite { m: usize, n: usize },
    /// `(i, j)` adjacent iff `0 < |i - j| <= d`.
    Band { n: usize, d: usize },
    /// Clique on `0..clique`; extra vertex `clique + k` is joined to the
    /// first `pendant_degrees[k]` clique vertices.
    Split {
        clique: usize,
        pendant_degrees: Vec<usize>,
    },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteMinusEdge { .. } => "complete_minus_edge",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Star { .. } => "star",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Band { .. } => "band",
            FamilySpec::Split { .. } => "split",
        }
    }

    fn params(&self) -> Vec<usize> {
        match self {
            FamilySpec::Complete { n }
            | FamilySpec::CompleteMinusEdge { n }
            | FamilySpec::Path { n }
            | FamilySpec::Cycle { n } => vec![*n],
            FamilySpec::Star { leaves } => vec![*leaves],
            FamilySpec::CompleteBipartite { m, n } => vec![*m, *n],
            FamilySpec::Band { n, d } => vec![*n, *d],
            FamilySpec::Split {
                clique,
                pendant_degrees,
            } => std::iter::once(*clique)
                .chain(pendant_degrees.iter().copied())
                .collect(),
        }
    }

    fn range_error(&self, constraint: impl Into<String>) -> Error {
        Error::ParameterRange {
            family: self.name(),
            constraint: constraint.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Complete { n } | FamilySpec::Path { n } if *n < 1 => {
                Err(self.range_error("n >= 1"))
            }
            FamilySpec::CompleteMinusEdge { n } if *n < 2 => Err(self.range_error("n >= 2")),
            FamilySpec::Cycle { n } if *n < 3 => Err(self.range_error("n >= 3")),
            FamilySpec::Star { leaves } if *leaves < 1 => Err(self.range_error("leaves >= 1")),
            FamilySpec::CompleteBipartite { m, n } if *m < 1 || *n < 1 => {
                Err(self.range_error("m >= 1 and n >= 1"))
            }
            FamilySpec::Band { n, d } if *d < 1 || *d >= *n => {
                Err(self.range_error("1 <= d < n"))
            }
            FamilySpec::Split {
                clique,
                pendant_degrees,
            } => {
                if *clique < 1 {
                    return Err(self.range_error("clique size >= 1"));
                }
                match pendant_degrees.iter().find(|&&d| d < 1 || d >= *clique) {
                    Some(d) => Err(self.range_error(format!(
                        "pendant degree {d} must lie in 1..={}",
                        clique.saturating_sub(1)
                    ))),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            line: 1,
            message: msg,
        };
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("family spec `{s}` must look like name:params")))?;
        let params = rest
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad family parameter `{p}`")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(format!("family `{name}` takes {k} parameter(s)")))
            }
        };
        let spec = match name.trim() {
            "complete" => {
                want(1)?;
                FamilySpec::Complete { n: params[0] }
            }
            "complete_minus_edge" => {
                want(1)?;
                FamilySpec::CompleteMinusEdge { n: params[0] }
            }
            "path" => {
                want(1)?;
                FamilySpec::Path { n: params[0] }
            }
            "cycle" => {
                want(1)?;
                FamilySpec::Cycle { n: params[0] }
            }
            "star" => {
                want(1)?;
                FamilySpec::Star { leaves: params[0] }
            }
            "complete_bipartite" => {
                want(2)?;
                FamilySpec::CompleteBipartite {
                    m: params[0],
                    n: params[1],
                }
            }
            "band" => {
                want(2)?;
                FamilySpec::Band {
                    n: params[0],
                    d: params[1],
                }
            }
            "split" => FamilySpec::Split {
                clique: params[0],
                pendant_degrees: params[1..].to_vec(),
            },
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the named graph with its canonical labeling.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let g = match *spec {
        FamilySpec::Complete { n } => Graph::complete(n),
        FamilySpec::CompleteMinusEdge { n } => {
            let mut g = Graph::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if (i, j) != (0, n - 1) {
                        g.insert_edge(i, j);
                    }
                }
            }
            g
        }
        FamilySpec::Path { n } => {
            let mut g = Graph::empty(n);
            for i in 1..n {
                g.insert_edge(i - 1, i);
            }
            g
        }
        FamilySpec::Cycle { n } => {
            let mut g = Graph::empty(n);
            for i in 0..n {
                g.insert_edge(i, (i + 1) % n);
            }
            g
        }
        FamilySpec::Star { leaves } => {
            let mut g = Graph::empty(leaves + 1);
            for leaf in 1..=leaves {
                g.insert_edge(0, leaf);
            }
            g
        }
        FamilySpec::CompleteBipartite { m, n } => {
            let mut g = Graph::empty(m + n);
            for a in 0..m {
                for b in m..m + n {
                    g.insert_edge(a, b);
                }
            }
            g
        }
        FamilySpec::Band { n, d } => {
            let mut g = Graph::empty(n);
            for i in 0..n {
                for j in i + 1..n.min(i + d + 1) {
                    g.insert_edge(i, j);
                }
            }
            g
        }
        FamilySpec::Split {
            clique,
            ref pendant_degrees,
        } => {
            let mut g = Graph::complete(clique);
            for &deg in pendant_degrees {
                let v = g.add_vertex();
                for c in 0..deg {
                    g.insert_edge(c, v);
                }
            }
            g
        }
    };
    Ok(g)
}
