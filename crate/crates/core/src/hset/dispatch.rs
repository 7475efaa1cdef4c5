use crate::chordal::{critical_exponent_chordal, is_chordal, minimal_triangulation};
use crate::error::{arg, Result};
use crate::graph::{
    clique_number, induced_subgraph, is_disjoint_union_k2, largest_near_clique, Graph,
    DEFAULT_VERTEX_CAP,
};
use crate::matrix::PowerKind;

use super::{HSet, HSetReport, Method};

/// [`hset_with_cap`] with the default vertex cap.
pub fn hset(g: &Graph) -> Result<HSetReport> {
    hset_with_cap(g, DEFAULT_VERTEX_CAP)
}

/// Exponent sets of `g` for all three families.
///
/// Exact for unions of `K_2`, chordal graphs, cycles, connected bipartite
/// graphs (plain family), and coalescences of such blocks (odd and even
/// families), always after removing pendant trees, which changes none of
/// the sets. Everything else gets bounds: the sets of a minimal
/// triangulation from below and those of the largest `K_r` or
/// `K_r`-minus-an-edge from above. Only that last route is subject to
/// `cap`.
pub fn hset_with_cap(g: &Graph, cap: usize) -> Result<HSetReport> {
    if g.vertex_count() < 2 {
        return Err(arg("exponent sets need at least two vertices"));
    }
    if g.edge_count() == 0 || is_disjoint_union_k2(g) {
        let omega = if g.edge_count() == 0 { 1 } else { 2 };
        return Ok(uniform(Method::K2Union, omega, 2, Some(0), 0.0));
    }
    if is_chordal(g) {
        return critical_exponent_chordal(g);
    }
    if !g.is_connected() {
        return disconnected(g, cap);
    }
    connected_non_chordal(g, cap)
}

fn uniform(method: Method, omega: usize, r: usize, s: Option<usize>, t: f64) -> HSetReport {
    HSetReport {
        method,
        omega,
        r,
        s,
        plain: HSet::exact(PowerKind::Plain, t),
        psi: HSet::exact(PowerKind::OddPsi, t),
        phi: HSet::exact(PowerKind::EvenPhi, t),
    }
}

/// The sets of a disjoint union are the intersections over its components;
/// isolated vertices contribute nothing.
fn disconnected(g: &Graph, cap: usize) -> Result<HSetReport> {
    let mut combined: Option<HSetReport> = None;
    let mut method = None;
    for comp in g.components().into_iter().filter(|c| c.len() > 1) {
        let (sub, _) = induced_subgraph(g, &comp)?;
        let rep = hset_with_cap(&sub, cap)?;
        if method.is_none() && !is_chordal(&sub) {
            method = Some(rep.method);
        }
        combined = Some(match combined {
            None => rep,
            Some(acc) => HSetReport {
                method: acc.method,
                omega: acc.omega.max(rep.omega),
                r: acc.r.max(rep.r),
                s: None,
                plain: acc.plain.intersect(&rep.plain),
                psi: acc.psi.intersect(&rep.psi),
                phi: acc.phi.intersect(&rep.phi),
            },
        });
    }
    let mut rep = combined.expect("a non-chordal graph has a component with edges");
    rep.method = method.expect("a non-chordal graph has a non-chordal component");
    rep.s = None;
    Ok(rep)
}

/// Repeatedly deletes degree-one vertices while at least four vertices
/// remain. Returns the core and `map[new] = old`.
pub fn strip_pendant_trees(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut left = n;
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if left <= 4 {
            break;
        }
        if removed[v] || degree[v] != 1 {
            continue;
        }
        removed[v] = true;
        left -= 1;
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    induced_subgraph(g, &keep).expect("core is nonempty")
}

/// Vertex sets of the blocks (maximal 2-connected subgraphs and bridges),
/// each sorted, the list sorted. Isolated vertices are not blocks.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let nbrs = |v: usize| g.neighbors(v).iter().copied().collect::<Vec<usize>>();
        // frames: (vertex, parent, neighbours, next index)
        let mut frames = vec![(root, usize::MAX, nbrs(root), 0usize)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.3 < frame.2.len() {
                let w = frame.2[frame.3];
                frame.3 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, nbrs(w), 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(up) = frames.last() {
                let u = up.0;
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some((x, y)) = edge_stack.pop() {
                        block.push(x);
                        block.push(y);
                        if (x, y) == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    out.push(block);
                }
            }
        }
    }
    out.sort();
    out
}

struct Recognized {
    method: Method,
    sets: [HSet; 3],
}

fn connected_non_chordal(g: &Graph, cap: usize) -> Result<HSetReport> {
    let (core, _) = strip_pendant_trees(g);
    let mut found: Vec<Recognized> = Vec::new();
    found.extend(cycle_sets(&core));
    found.extend(coalescence_sets(&core, cap)?);
    found.extend(bipartite_sets(&core));

    let all_exact = found.iter().any(|f| f.sets.iter().all(HSet::is_exact));
    let search_cap = if all_exact || !found.is_empty() {
        usize::MAX
    } else {
        cap
    };
    let omega = clique_number(&core, search_cap)?;
    let r = largest_near_clique(&core, search_cap)?;

    // Generic sandwich: a minimal triangulation contains the graph, and the
    // graph contains K_r or K_r minus an edge, and a path on three vertices.
    let tri = critical_exponent_chordal(&minimal_triangulation(&core))?;
    let upper = (r as f64 - 2.0).max(1.0);
    let mut sets = PowerKind::ALL.map(|k| HSet::bounded(k, tri.ce(k), upper));
    for f in &found {
        for (s, t) in sets.iter_mut().zip(&f.sets) {
            *s = s.refine(t);
        }
    }
    let [plain, psi, phi] = sets;
    Ok(HSetReport {
        method: found
            .first()
            .map_or(Method::TriangulationBounds, |f| f.method),
        omega,
        r,
        s: None,
        plain,
        psi,
        phi,
    })
}

fn cycle_sets(g: &Graph) -> Option<Recognized> {
    let n = g.vertex_count();
    if n < 4 || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let phi = if n == 4 {
        HSet::exact(PowerKind::EvenPhi, 2.0)
    } else if n.is_multiple_of(2) {
        HSet::bounded(PowerKind::EvenPhi, 2.0, 1.0).with_exclusion(1.0)
    } else {
        HSet::bounded(PowerKind::EvenPhi, 2.0, 1.0)
    };
    Some(Recognized {
        method: Method::Cycle,
        sets: [
            HSet::exact(PowerKind::Plain, 1.0),
            HSet::exact(PowerKind::OddPsi, 1.0),
            phi,
        ],
    })
}

fn bipartite_sets(g: &Graph) -> Option<Recognized> {
    let n = g.vertex_count();
    let side = g.bipartition()?;
    if n < 3 || !g.is_connected() {
        return None;
    }
    let count_a = side.iter().filter(|&&s| s).count();
    let small: Vec<usize> = if count_a == 2 {
        (0..n).filter(|&v| side[v]).collect()
    } else if n - count_a == 2 {
        (0..n).filter(|&v| !side[v]).collect()
    } else {
        Vec::new()
    };
    let within_k2m = small.len() == 2
        && g.neighbors(small[0])
            .intersection(g.neighbors(small[1]))
            .count()
            >= 2;
    let (phi, psi) = if within_k2m {
        (
            HSet::exact(PowerKind::EvenPhi, 2.0),
            HSet::bounded(PowerKind::OddPsi, 2.0, 1.0),
        )
    } else {
        (
            HSet::bounded(PowerKind::EvenPhi, 2.0, 1.0),
            HSet::bounded(PowerKind::OddPsi, 3.0, 1.0),
        )
    };
    Some(Recognized {
        method: Method::Bipartite,
        sets: [HSet::exact(PowerKind::Plain, 1.0), psi, phi],
    })
}

/// Odd and even families on a coalescence are `[1, ∞)` intersected with
/// the sets of its blocks. The plain family is only bracketed: it contains
/// both of those sets and sits inside every block's plain set and `[1, ∞)`.
fn coalescence_sets(g: &Graph, cap: usize) -> Result<Option<Recognized>> {
    let parts = blocks(g);
    if parts.len() < 2 {
        return Ok(None);
    }
    let mut psi = HSet::exact(PowerKind::OddPsi, 1.0);
    let mut phi = HSet::exact(PowerKind::EvenPhi, 1.0);
    let mut plain_upper = 1.0f64;
    for block in &parts {
        let (sub, _) = induced_subgraph(g, block)?;
        let rep = hset_with_cap(&sub, cap)?;
        psi = psi.intersect(&rep.psi);
        phi = phi.intersect(&rep.phi);
        plain_upper = plain_upper.max(rep.plain.upper().ray_start);
    }
    let plain_lower = psi.ray_start().min(phi.ray_start());
    Ok(Some(Recognized {
        method: Method::Coalescence,
        sets: [
            HSet::bounded(PowerKind::Plain, plain_lower, plain_upper),
            psi,
            phi,
        ],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{coalesce, generate, FamilySpec};
    use crate::hset::{Membership, Mode};

    fn family(s: &str) -> Graph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn cycles() {
        let rep = hset(&family("cycle:5")).unwrap();
        assert_eq!(rep.method, Method::Cycle);
        assert!(rep.plain.is_exact() && rep.psi.is_exact());
        assert_eq!(rep.psi.ray_start(), 1.0);
        assert_eq!(rep.phi.mode(), Mode::Bounded);
        assert_eq!(rep.phi.lower().ray_start, 2.0);
        assert_eq!(rep.phi.upper().ray_start, 1.0);
        assert_eq!(rep.phi.contains(1.0), Membership::Unknown);

        let rep = hset(&family("cycle:4")).unwrap();
        assert!(rep.is_exact());
        assert_eq!(rep.phi.ray_start(), 2.0);

        let rep = hset(&family("cycle:6")).unwrap();
        assert_eq!(rep.phi.contains(1.0), Membership::Out);
        assert_eq!(rep.phi.exclusions(), &[1.0]);
    }

    #[test]
    fn bipartite() {
        let rep = hset(&family("complete_bipartite:3,3")).unwrap();
        assert_eq!(rep.method, Method::Bipartite);
        assert!(rep.plain.is_exact());
        assert_eq!(rep.plain.ray_start(), 1.0);
        assert_eq!(rep.psi.lower().ray_start, 3.0);

        let rep = hset(&family("complete_bipartite:2,4")).unwrap();
        assert!(rep.phi.is_exact());
        assert_eq!(rep.phi.ray_start(), 2.0);
        assert_eq!(rep.psi.lower().ray_start, 2.0);
        assert_eq!(rep.psi.contains(1.0), Membership::In);
    }

    #[test]
    fn coalescence_of_c4_and_k3() {
        let g = coalesce(&family("cycle:4"), 0, &family("complete:3"), 0).unwrap().graph;
        let rep = hset(&g).unwrap();
        assert_eq!(rep.method, Method::Coalescence);
        assert!(rep.psi.is_exact());
        assert_eq!(rep.psi.ray_start(), 1.0);
        assert_eq!(rep.phi.ray_start(), 2.0);
        assert!(rep.phi.is_exact());
        assert_eq!(rep.plain.ray_start(), 1.0);
    }

    #[test]
    fn pendant_trees_change_nothing() {
        let c5 = family("cycle:5");
        let star = family("star:3");
        let g = coalesce(&c5, 2, &star, 1).unwrap().graph;
        let g = coalesce(&g, 0, &family("path:4"), 0).unwrap().graph;
        let (core, _) = strip_pendant_trees(&g);
        assert_eq!(core.vertex_count(), 5);
        let (a, b) = (hset(&g).unwrap(), hset(&c5).unwrap());
        assert_eq!((a.plain, a.psi, a.phi), (b.plain, b.psi, b.phi));
    }

    #[test]
    fn k2_unions_and_edgeless() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let rep = hset(&g).unwrap();
        assert_eq!(rep.method, Method::K2Union);
        assert_eq!(rep.ce(PowerKind::Plain), 0.0);
        assert_eq!(hset(&Graph::empty(3)).unwrap().method, Method::K2Union);
        assert!(hset(&Graph::empty(1)).is_err());
    }

    #[test]
    fn disconnected_intersects_components() {
        let c4 = family("cycle:4");
        let k4 = family("complete:4");
        let mut edges = c4.edges();
        edges.extend(k4.edges().iter().map(|&(i, j)| (i + 4, j + 4)));
        let g = Graph::from_edges(9, &edges).unwrap();
        let rep = hset(&g).unwrap();
        assert_eq!(rep.method, Method::Cycle);
        assert_eq!(rep.plain.ray_start(), 2.0);
        assert_eq!(rep.psi.ray_start(), 2.0);
        assert_eq!(rep.phi.ray_start(), 2.0);
        assert!(rep.is_exact());
        assert_eq!(rep.omega, 4);
    }

    #[test]
    fn general_graphs_get_consistent_bounds() {
        // wheel on 6 vertices: hub 0 over the cycle 1..5
        let mut edges: Vec<(usize, usize)> = (1..6).map(|i| (0, i)).collect();
        edges.extend((1..6).map(|i| (i, i % 5 + 1)));
        let g = Graph::from_edges(6, &edges).unwrap();
        let rep = hset(&g).unwrap();
        assert_eq!(rep.method, Method::TriangulationBounds);
        assert_eq!(rep.r, 4);
        for k in PowerKind::ALL {
            let h = rep.get(k);
            assert!(h.lower().is_subset(&h.upper()));
            assert_eq!(h.upper().ray_start, 2.0);
        }
        assert!(matches!(
            hset_with_cap(&g, 5),
            Err(crate::Error::Capacity { n: 6, cap: 5 })
        ));
    }

    #[test]
    fn block_decomposition() {
        let g = coalesce(&family("cycle:4"), 0, &family("complete:3"), 0).unwrap().graph;
        assert_eq!(blocks(&g), vec![vec![0, 1, 2, 3], vec![0, 4, 5]]);
        assert_eq!(blocks(&family("path:4")), vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(blocks(&family("cycle:6")).len(), 1);
    }
}
