use std::collections::BTreeSet;

use super::Graph;
use crate::error::{arg, Result};

/// Subgraph induced by `vertices`, relabeled `0..k` by increasing original
/// label. Returns the graph and `map[new] = old`.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
    if vertices.is_empty() {
        return Err(arg("induced subgraph needs a nonempty vertex set"));
    }
    for &v in vertices {
        g.check_vertex(v)?;
    }
    let map: Vec<usize> = vertices
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut inverse = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in map.iter().enumerate() {
        inverse[old] = new;
    }
    let mut sub = Graph::empty(map.len());
    for (new, &old) in map.iter().enumerate() {
        for &w in g.neighbors(old) {
            let w_new = inverse[w];
            if w_new != usize::MAX && new < w_new {
                sub.insert_edge(new, w_new);
            }
        }
    }
    Ok((sub, map))
}

/// `G / v`: drop `v` and join its neighbours into a clique. Remaining
/// vertices keep their relative order.
pub fn schur_complement_graph(g: &Graph, v: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    if g.vertex_count() < 2 {
        return Err(arg("Schur complement graph needs at least two vertices"));
    }
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let mut out = Graph::empty(g.vertex_count() - 1);
    for (i, j) in g.edges() {
        if i != v && j != v {
            out.insert_edge(shift(i), shift(j));
        }
    }
    let nbrs: Vec<usize> = g.neighbors(v).iter().map(|&u| shift(u)).collect();
    for (k, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[k + 1..] {
            out.insert_edge(a, b);
        }
    }
    Ok(out)
}

/// Result of gluing two graphs at one vertex.
#[derive(Clone, Debug)]
pub struct Coalescence {
    pub graph: Graph,
    /// `first_map[v]` is the label of vertex `v` of the first input.
    pub first_map: Vec<usize>,
    /// `second_map[v]` is the label of vertex `v` of the second input.
    pub second_map: Vec<usize>,
}

/// Disjoint union of `g1` and `g2` with `v1` and `v2` identified.
///
/// Vertices of `g1` keep their labels; the other vertices of `g2` follow
/// in order.
pub fn coalesce(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Coalescence> {
    if g1.vertex_count() == 0 || g2.vertex_count() == 0 {
        return Err(arg("coalescence needs nonempty graphs"));
    }
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let n1 = g1.vertex_count();
    let mut second_map = Vec::with_capacity(g2.vertex_count());
    let mut next = n1;
    for u in 0..g2.vertex_count() {
        if u == v2 {
            second_map.push(v1);
        } else {
            second_map.push(next);
            next += 1;
        }
    }
    let mut graph = g1.clone();
    for _ in n1..next {
        graph.add_vertex();
    }
    for (i, j) in g2.edges() {
        graph.insert_edge(second_map[i], second_map[j]);
    }
    Ok(Coalescence {
        graph,
        first_map: (0..n1).collect(),
        second_map,
    })
}

/// `G_m(v1, v2)`: `g` plus a fresh `v1`–`v2` path with `m` edges.
///
/// With `m == 1` the edge `{v1, v2}` is added if missing; an existing edge
/// leaves `g` unchanged.
pub fn add_path(g: &Graph, v1: usize, v2: usize, m: usize) -> Result<Graph> {
    g.check_vertex(v1)?;
    g.check_vertex(v2)?;
    if v1 == v2 {
        return Err(arg("path endpoints must differ"));
    }
    if m == 0 {
        return Err(arg("path length must be positive"));
    }
    let mut out = g.clone();
    let mut prev = v1;
    for _ in 1..m {
        let fresh = out.add_vertex();
        out.insert_edge(prev, fresh);
        prev = fresh;
    }
    out.insert_edge(prev, v2);
    Ok(out)
}
