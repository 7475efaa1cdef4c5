use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::is_chordal;
use crate::graph::Graph;

/// Minimal (not minimum) triangulation by MCS-M; chordal input is returned
/// unchanged.
///
/// At each step the unnumbered vertex of largest weight (lowest label on
/// ties) is numbered, and every unnumbered `u` reachable from it through
/// unnumbered vertices of weight below `w(u)` gains weight and, if needed,
/// a fill edge.
pub fn minimal_triangulation(g: &Graph) -> Graph {
    if is_chordal(g) {
        return g.clone();
    }
    let n = g.vertex_count();
    let mut out = g.clone();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    for _ in 0..n {
        let mut v = usize::MAX;
        for x in 0..n {
            if !numbered[x] && (v == usize::MAX || weight[x] > weight[v]) {
                v = x;
            }
        }
        numbered[v] = true;

        // bottleneck[u] = least possible largest weight of an interior
        // vertex on a path v ~ u through unnumbered vertices
        let mut bottleneck: Vec<Option<i64>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        for &u in g.neighbors(v) {
            if !numbered[u] {
                bottleneck[u] = Some(-1);
                heap.push(Reverse((-1i64, u)));
            }
        }
        while let Some(Reverse((b, x))) = heap.pop() {
            if bottleneck[x] != Some(b) {
                continue;
            }
            let through = b.max(weight[x] as i64);
            for &y in g.neighbors(x) {
                if numbered[y] || y == v {
                    continue;
                }
                if bottleneck[y].is_none_or(|cur| through < cur) {
                    bottleneck[y] = Some(through);
                    heap.push(Reverse((through, y)));
                }
            }
        }
        for u in 0..n {
            if let Some(b) = bottleneck[u] {
                if b < weight[u] as i64 {
                    weight[u] += 1;
                    out.insert_edge(v, u);
                }
            }
        }
    }
    out
}
