//! Simple undirected graphs used as sparsity patterns.
//!
//! Vertices are `0..n` inside the library. Text formats and reports use the
//! 1-based labels `1..=n`; conversion happens only at the I/O boundary.

mod cliques;
mod family;
pub mod io;
mod ops;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{arg, Error, Result};

pub use cliques::{
    clique_number, find_near_clique, largest_near_clique, maximal_cliques_general, NearClique,
    DEFAULT_VERTEX_CAP,
};
pub use family::{generate, FamilySpec};
pub use ops::{add_path, coalesce, induced_subgraph, schur_complement_graph, Coalescence};

/// Simple undirected graph with symmetric adjacency sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.insert_edge(i, j);
            }
        }
        g
    }

    /// Build from an edge list. Self-loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(arg(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if i == j {
                return Err(Error::Validation(format!("self-loop at vertex {i}")));
            }
            if !g.insert_edge(i, j) {
                return Err(Error::Validation(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(g)
    }

    /// Inserts `{i, j}`; returns false if it was already present or `i == j`.
    pub(crate) fn insert_edge(&mut self, i: usize, j: usize) -> bool {
        if i == j || self.adj[i].contains(&j) {
            return false;
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        self.edge_count += 1;
        true
    }

    pub(crate) fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i < self.adj.len() && self.adj[i].contains(&j)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.range(i + 1..).map(|&j| (i, j)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(arg(format!(
                "vertex {v} out of range for {} vertices",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// True if every pair of distinct vertices in `set` is adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &a)| set[k + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count == n * n.saturating_sub(1) / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        n >= 1 && self.edge_count + 1 == n && self.is_connected()
    }

    /// Two-colouring of the graph if it is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let s = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// True if `self` contains every edge of `other` (same vertex count).
    pub fn contains_subgraph(&self, other: &Graph) -> bool {
        self.vertex_count() == other.vertex_count()
            && other.edges().iter().all(|&(i, j)| self.has_edge(i, j))
    }

    /// Union of the edge sets of two graphs on the same vertices.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.vertex_count() != other.vertex_count() {
            return Err(arg("graph union needs equal vertex counts"));
        }
        let mut g = self.clone();
        for (i, j) in other.edges() {
            g.insert_edge(i, j);
        }
        Ok(g)
    }

    /// Vertices with at least one neighbour.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) > 0).collect()
    }
}

/// True iff every connected component is a single edge.
///
/// An isolated vertex is a `K_1` component and disqualifies the graph.
pub fn is_disjoint_union_k2(g: &Graph) -> bool {
    g.vertex_count() > 0 && (0..g.vertex_count()).all(|v| g.degree(v) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 1), (3, 0)]).unwrap();
        for i in 0..4 {
            for &j in g.neighbors(i) {
                assert!(g.neighbors(j).contains(&i));
            }
        }
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn k2_union_detection() {
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(is_disjoint_union_k2(&two_edges));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_disjoint_union_k2(&p3));
        assert!(!is_disjoint_union_k2(&Graph::empty(1)));
        let with_isolated = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!is_disjoint_union_k2(&with_isolated));
    }

    #[test]
    fn bipartition_of_odd_cycle_fails() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.bipartition().is_none());
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.bipartition().is_some());
    }
}
