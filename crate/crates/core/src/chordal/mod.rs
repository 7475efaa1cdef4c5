//! Chordality, perfect orderings and the clique-based exponent formula.

mod decomposition;
mod ordering;
mod triangulation;

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{maximal_cliques_general, Graph};

pub use decomposition::{verify_decomposition, DecompositionCertificate, DecompositionCheck};
pub use ordering::{
    chordal_near_clique, clique_matrix, critical_exponent_chordal, perfect_clique_ordering, CliqueMatrix,
    CliqueOrdering, FORMULA_ROUTE_LIMIT,
};
pub use triangulation::minimal_triangulation;

/// A maximum cardinality search and whether it certified chordality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mcs {
    /// Vertices in visiting order; the reverse is a perfect elimination
    /// ordering exactly when `chordal` is true.
    pub order: Vec<usize>,
    /// `weights[k]` = number of neighbours of `order[k]` visited before it.
    pub weights: Vec<usize>,
    pub chordal: bool,
}

/// Maximum cardinality search, ties broken by lowest label, followed by
/// the one-pass perfect elimination check: for each vertex, its earlier
/// neighbours other than the latest one must all be adjacent to the latest.
pub fn maximum_cardinality_search(g: &Graph) -> Mcs {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if !visited[v] && best.is_none_or(|b| weight[v] > weight[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        weights.push(weight[v]);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    let chordal = is_perfect_visit_order(g, &order);
    Mcs {
        order,
        weights,
        chordal,
    }
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    pos
}

/// True if the reverse of `order` is a perfect elimination ordering.
fn is_perfect_visit_order(g: &Graph, order: &[usize]) -> bool {
    let pos = positions(order);
    order.iter().all(|&v| {
        let earlier: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] < pos[v])
            .collect();
        match earlier.iter().copied().max_by_key(|&u| pos[u]) {
            None => true,
            Some(p) => earlier.iter().all(|&u| u == p || g.has_edge(u, p)),
        }
    })
}

pub fn is_chordal(g: &Graph) -> bool {
    maximum_cardinality_search(g).chordal
}

/// A chordless cycle of length at least four, or `None` for chordal graphs.
///
/// For a vertex `v` with non-adjacent neighbours `u`, `w`, a shortest
/// `u`–`w` path avoiding the rest of `N[v]` closes an induced cycle through
/// `v`; every non-chordal graph has such a triple.
pub fn chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors(v).iter().copied().collect();
        for (k, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[k + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let blocked = |x: usize| x == v || (x != w && g.has_edge(v, x));
                if let Some(path) = shortest_path(g, u, w, blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(
    g: &Graph,
    from: usize,
    to: usize,
    blocked: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX && !blocked(y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Maximal cliques of a chordal graph from its search order: the candidate
/// `{v} ∪ (earlier neighbours of v)` is maximal unless the next visited
/// vertex has a larger weight, in which case it extends this one.
pub(crate) fn chordal_cliques_in_visit_order(g: &Graph, mcs: &Mcs) -> Vec<Vec<usize>> {
    debug_assert!(mcs.chordal);
    let pos = positions(&mcs.order);
    let n = mcs.order.len();
    let mut out = Vec::new();
    for k in 0..n {
        if k + 1 < n && mcs.weights[k + 1] > mcs.weights[k] {
            continue;
        }
        let v = mcs.order[k];
        let mut clique: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] < k)
            .collect();
        clique.push(v);
        clique.sort_unstable();
        out.push(clique);
    }
    out
}

/// All maximal cliques, each sorted, the list sorted lexicographically.
///
/// Chordal graphs use the linear-time route; other graphs fall back to an
/// exact enumeration that refuses graphs above `cap` vertices.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mcs = maximum_cardinality_search(g);
    if mcs.chordal {
        let mut cliques = chordal_cliques_in_visit_order(g, &mcs);
        cliques.sort();
        Ok(cliques)
    } else {
        maximal_cliques_general(g, cap)
    }
}
