use std::collections::BTreeSet;

use super::{chordal_cliques_in_visit_order, chordless_cycle, maximal_cliques, maximum_cardinality_search};
use crate::error::{arg, Error, Result};
use crate::graph::{Graph, NearClique};
use crate::hset::{HSet, HSetReport, Method};
use crate::matrix::PowerKind;

/// Clique counts up to this many squared also run the clique-matrix
/// formula next to the separator formula and assert that they agree.
pub const FORMULA_ROUTE_LIMIT: usize = 1 << 16;

/// Maximal cliques `C_1, ..., C_k` in a fixed order with
/// `H_j = C_1 ∪ ... ∪ C_j`, `R_j = C_j \ H_{j-1}` and `S_j = H_{j-1} ∩ C_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOrdering {
    pub cliques: Vec<Vec<usize>>,
    pub histories: Vec<Vec<usize>>,
    pub residuals: Vec<Vec<usize>>,
    pub separators: Vec<Vec<usize>>,
}

impl CliqueOrdering {
    /// Derives histories, residuals and separators from an ordered clique list.
    pub fn new(cliques: Vec<Vec<usize>>) -> Self {
        let mut history: BTreeSet<usize> = BTreeSet::new();
        let mut histories = Vec::with_capacity(cliques.len());
        let mut residuals = Vec::with_capacity(cliques.len());
        let mut separators = Vec::with_capacity(cliques.len());
        for c in &cliques {
            let (sep, res): (Vec<usize>, Vec<usize>) = c.iter().partition(|v| history.contains(v));
            separators.push(sep);
            residuals.push(res);
            history.extend(c.iter().copied());
            histories.push(history.iter().copied().collect());
        }
        Self {
            cliques,
            histories,
            residuals,
            separators,
        }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn clique_number(&self) -> usize {
        self.cliques.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `max |S_j|` (0 with fewer than two cliques).
    pub fn max_separator(&self) -> usize {
        self.separators.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks every structural property of a perfect ordering against `g`.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let n = g.vertex_count();
        let mut covered = vec![false; n];
        for (j, c) in self.cliques.iter().enumerate() {
            if c.iter().any(|&v| v >= n) {
                return Err(format!("clique {j} has a vertex out of range"));
            }
            if !g.is_clique(c) {
                return Err(format!("C_{j} = {c:?} is not a clique"));
            }
            let extendable = (0..n).find(|&x| !c.contains(&x) && c.iter().all(|&v| g.has_edge(v, x)));
            if let Some(x) = extendable {
                return Err(format!("C_{j} = {c:?} is not maximal (vertex {x} extends it)"));
            }
            for &v in c {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(format!("vertex {v} lies in no clique"));
        }
        for (i, s) in self.separators.iter().enumerate().skip(1) {
            if !g.is_clique(s) {
                return Err(format!("S_{i} = {s:?} is not complete"));
            }
            if !self.cliques[..i].iter().any(|c| s.iter().all(|v| c.contains(v))) {
                return Err(format!("S_{i} = {s:?} lies in no earlier clique"));
            }
        }
        Ok(())
    }
}

/// Perfect ordering of the maximal cliques of a chordal graph: cliques are
/// ordered by the latest search position among their vertices.
pub fn perfect_clique_ordering(g: &Graph) -> Result<CliqueOrdering> {
    let mcs = maximum_cardinality_search(g);
    if !mcs.chordal {
        return Err(not_chordal(g));
    }
    Ok(CliqueOrdering::new(chordal_cliques_in_visit_order(g, &mcs)))
}

pub(crate) fn not_chordal(g: &Graph) -> Error {
    Error::NotChordal {
        cycle: chordless_cycle(g).expect("non-chordal graphs have a chordless cycle"),
    }
}

/// A largest `K_r` or `K_r`-minus-an-edge of a chordal graph, read off a
/// perfect ordering: either a largest clique, or a largest separator `S_j`
/// together with a vertex of `R_j` and a vertex of an earlier clique
/// containing `S_j` outside it (the two are never adjacent).
pub fn chordal_near_clique(g: &Graph) -> Result<Option<NearClique>> {
    if g.vertex_count() < 2 {
        return Ok(None);
    }
    let o = perfect_clique_ordering(g)?;
    let biggest = o
        .cliques
        .iter()
        .max_by_key(|c| c.len())
        .expect("a graph with vertices has cliques");
    let mut best = (biggest.len() >= 2).then(|| NearClique {
        a: biggest[0],
        b: biggest[biggest.len() - 1],
        middle: biggest[1..biggest.len() - 1].to_vec(),
    });
    for j in 1..o.len() {
        let sep = &o.separators[j];
        if best.as_ref().is_some_and(|b| b.middle.len() >= sep.len()) {
            continue;
        }
        let earlier = o.cliques[..j]
            .iter()
            .find(|c| sep.iter().all(|v| c.contains(v)))
            .expect("running intersection");
        let a = *earlier
            .iter()
            .find(|v| !sep.contains(v))
            .expect("maximal cliques differ from their separators");
        best = Some(NearClique {
            a,
            b: o.residuals[j][0],
            middle: sep.clone(),
        });
    }
    Ok(best)
}

/// Vertex-by-clique incidence matrix, columns in lexicographic clique order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueMatrix {
    pub vertex_count: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueMatrix {
    pub fn entry(&self, v: usize, j: usize) -> u8 {
        u8::from(self.cliques[j].contains(&v))
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.vertex_count)
            .map(|v| (0..self.cliques.len()).map(|j| self.entry(v, j)).collect())
            .collect()
    }

    /// `MᵀM`, computed entry by entry from the incidence rows.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let rows = self.rows();
        let k = self.cliques.len();
        let mut out = vec![vec![0i64; k]; k];
        for row in &rows {
            for a in 0..k {
                if row[a] == 0 {
                    continue;
                }
                for b in 0..k {
                    out[a][b] += i64::from(row[b]);
                }
            }
        }
        out
    }

    /// Largest entry of `MᵀM - 2I`.
    pub fn max_shifted_gram_entry(&self) -> i64 {
        self.gram()
            .iter()
            .enumerate()
            .flat_map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(b, &x)| if a == b { x - 2 } else { x })
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn clique_matrix(g: &Graph, cap: usize) -> Result<CliqueMatrix> {
    Ok(CliqueMatrix {
        vertex_count: g.vertex_count(),
        cliques: maximal_cliques(g, cap)?,
    })
}

/// Exact report for a chordal graph with at least two vertices. All three
/// families share the critical exponent `max(ω - 2, s)`, which is also the
/// largest entry of `MᵀM - 2I` for the clique matrix `M`.
pub fn critical_exponent_chordal(g: &Graph) -> Result<HSetReport> {
    if g.vertex_count() < 2 {
        return Err(arg("critical exponent needs at least two vertices"));
    }
    let ordering = perfect_clique_ordering(g)?;
    let omega = ordering.clique_number();
    let s = ordering.max_separator();
    let ce = (omega as i64 - 2).max(s as i64);
    let k = ordering.len();
    if k * k <= FORMULA_ROUTE_LIMIT {
        let mut cliques = ordering.cliques.clone();
        cliques.sort();
        let m = CliqueMatrix {
            vertex_count: g.vertex_count(),
            cliques,
        };
        assert_eq!(
            m.max_shifted_gram_entry(),
            ce,
            "clique-matrix and separator formulas disagree"
        );
    }
    let method = if g.is_complete() {
        Method::CompleteFormula
    } else if g.is_tree() {
        Method::Tree
    } else {
        Method::ChordalFormula
    };
    let t = ce as f64;
    Ok(HSetReport {
        method,
        omega,
        r: (ce + 2) as usize,
        s: Some(s),
        plain: HSet::exact(PowerKind::Plain, t),
        psi: HSet::exact(PowerKind::OddPsi, t),
        phi: HSet::exact(PowerKind::EvenPhi, t),
    })
}
