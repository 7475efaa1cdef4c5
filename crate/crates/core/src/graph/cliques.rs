use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

/// Vertex cap for exponential-time searches.
pub const DEFAULT_VERTEX_CAP: usize = 64;

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.vertex_count() > cap {
        return Err(Error::Capacity {
            n: g.vertex_count(),
            cap,
        });
    }
    Ok(())
}

/// All maximal cliques by Bron–Kerbosch with Tomita pivoting.
///
/// Each clique is sorted and the list is sorted lexicographically.
pub fn maximal_cliques_general(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    check_cap(g, cap)?;
    let mut out = Vec::new();
    let candidates: BTreeSet<usize> = (0..g.vertex_count()).collect();
    bron_kerbosch(g, &mut Vec::new(), candidates, BTreeSet::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    g: &Graph,
    current: &mut Vec<usize>,
    mut candidates: BTreeSet<usize>,
    mut excluded: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .copied()
        .max_by_key(|&u| {
            (
                g.neighbors(u).intersection(&candidates).count(),
                std::cmp::Reverse(u),
            )
        })
        .expect("candidates nonempty");
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| !g.has_edge(pivot, v))
        .collect();
    for v in branch {
        let nbrs = g.neighbors(v);
        current.push(v);
        bron_kerbosch(
            g,
            current,
            candidates.intersection(nbrs).copied().collect(),
            excluded.intersection(nbrs).copied().collect(),
            out,
        );
        current.pop();
        candidates.remove(&v);
        excluded.insert(v);
    }
}

/// Size of a largest clique (0 for the empty graph).
pub fn clique_number(g: &Graph, cap: usize) -> Result<usize> {
    Ok(maximal_cliques_general(g, cap)?
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0))
}

/// Largest `r` such that `K_r` or `K_r` minus one edge is a subgraph of `g`.
///
/// `K_r^{(1)}` with missing pair `{a, b}` sits in `g` exactly when `a` and
/// `b` have `r - 2` pairwise adjacent common neighbours, so the search is
/// the clique number together with the clique number of every common
/// neighbourhood of a non-adjacent pair.
pub fn largest_near_clique(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(crate::error::arg("largest near-clique needs at least two vertices"));
    }
    check_cap(g, cap)?;
    let mut best = clique_number(g, cap)?;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            let common: Vec<usize> = g
                .neighbors(a)
                .intersection(g.neighbors(b))
                .copied()
                .collect();
            if common.len() + 2 <= best {
                continue;
            }
            let omega = if common.is_empty() {
                0
            } else {
                let (sub, _) = super::induced_subgraph(g, &common)?;
                clique_number(&sub, cap)?
            };
            best = best.max(omega + 2);
        }
    }
    Ok(best)
}

/// An embedded `K_{m+2}` minus (at most) the edge `{a, b}`: `a` and `b`
/// are both adjacent to every vertex of the clique `middle`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearClique {
    pub a: usize,
    pub b: usize,
    pub middle: Vec<usize>,
}

impl NearClique {
    /// Order `m + 2` of the embedded graph.
    pub fn order(&self) -> usize {
        self.middle.len() + 2
    }

    /// Vertices in witness order: `a`, the middle clique, `b`.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = vec![self.a];
        v.extend(&self.middle);
        v.push(self.b);
        v
    }
}

/// A largest near-clique of `g` (order [`largest_near_clique`]), or `None`
/// when `g` has fewer than two vertices.
pub fn find_near_clique(g: &Graph, cap: usize) -> Result<Option<NearClique>> {
    let n = g.vertex_count();
    if n < 2 {
        return Ok(None);
    }
    check_cap(g, cap)?;
    let cliques = maximal_cliques_general(g, cap)?;
    let biggest = cliques
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse((*c).clone())))
        .expect("nonempty graph has a clique");
    let mut best = if biggest.len() >= 2 {
        Some(NearClique {
            a: biggest[0],
            b: biggest[biggest.len() - 1],
            middle: biggest[1..biggest.len() - 1].to_vec(),
        })
    } else {
        None
    };
    let mut best_order = best.as_ref().map_or(0, NearClique::order);
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            let common: Vec<usize> = g
                .neighbors(a)
                .intersection(g.neighbors(b))
                .copied()
                .collect();
            if common.len() + 2 <= best_order && best.is_some() {
                continue;
            }
            let middle = if common.is_empty() {
                Vec::new()
            } else {
                let (sub, map) = super::induced_subgraph(g, &common)?;
                maximal_cliques_general(&sub, cap)?
                    .into_iter()
                    .max_by_key(|c| (c.len(), std::cmp::Reverse(c.clone())))
                    .map(|c| c.into_iter().map(|v| map[v]).collect())
                    .unwrap_or_default()
            };
            if middle.len() + 2 > best_order || best.is_none() {
                best_order = middle.len() + 2;
                best = Some(NearClique { a, b, middle });
            }
        }
    }
    Ok(best)
}
