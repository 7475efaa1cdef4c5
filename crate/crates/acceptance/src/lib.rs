//! Graph batteries shared by the acceptance criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use critexp::graph::{coalesce, generate, FamilySpec, Graph};

pub fn family(spec: &str) -> Graph {
    generate(&spec.parse::<FamilySpec>().expect("valid family")).expect("valid parameters")
}

/// Uniform random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    Graph::from_edges(n, &edges).expect("tree edges")
}

/// Apex `0` joined to every vertex of the path `1, ..., n-1`.
pub fn fan(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    edges.extend((1..n.saturating_sub(1)).map(|i| (i, i + 1)));
    Graph::from_edges(n, &edges).expect("fan edges")
}

/// Chordal graph grown by simplicial additions: each new vertex is joined
/// to a random clique inside the closed neighbourhood of a random earlier
/// vertex.
pub fn random_chordal(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        let anchor = rng.random_range(0..v);
        let mut clique = vec![anchor];
        for w in 0..v {
            if adj[anchor][w] && rng.random_bool(0.5) && clique.iter().all(|&x| adj[x][w]) {
                clique.push(w);
            }
        }
        for u in clique {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    from_matrix(&adj)
}

fn from_matrix(adj: &[Vec<bool>]) -> Graph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| adj[i][j])
        .collect();
    Graph::from_edges(n, &edges).expect("simple graph")
}

/// `G(n, p)` with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = rng.random_bool(p);
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    from_matrix(&adj)
}

/// A graph with its expected (plain) critical exponent.
pub struct Case {
    pub name: String,
    pub graph: Graph,
    pub ce: usize,
}

/// Trees, complete graphs, band graphs, fans and split graphs with their
/// known critical exponents.
pub fn table_battery() -> Vec<Case> {
    let mut out = Vec::new();
    for n in 3..=10 {
        for seed in 0..3 {
            out.push(Case {
                name: format!("tree(n={n},seed={seed})"),
                graph: random_tree(n, 1000 * n as u64 + seed),
                ce: 1,
            });
        }
    }
    for n in 2..=8 {
        out.push(Case {
            name: format!("complete:{n}"),
            graph: family(&format!("complete:{n}")),
            ce: n - 2,
        });
    }
    for d in 1..=4 {
        for n in d + 2..=10 {
            out.push(Case {
                name: format!("band:{n},{d}"),
                graph: family(&format!("band:{n},{d}")),
                ce: d,
            });
        }
    }
    for n in 3..=8 {
        out.push(Case {
            name: format!("fan({n})"),
            graph: fan(n),
            ce: 2.min(n - 2),
        });
    }
    for c in 3..=6usize {
        let mut lists: Vec<Vec<usize>> = (1..c).map(|d| vec![d]).collect();
        lists.push(vec![1, c - 1]);
        lists.push(vec![c - 1, c - 1]);
        lists.push(vec![2, 2, 1]);
        for degrees in lists {
            let spec = format!(
                "split:{c},{}",
                degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            );
            let max_degree = *degrees.iter().max().unwrap();
            out.push(Case {
                name: spec.clone(),
                graph: family(&spec),
                ce: (c - 2).max(max_degree),
            });
        }
    }
    out
}

fn coalesce_chain(blocks: &[&str], at_shared_vertex: bool) -> Graph {
    let mut acc = family(blocks[0]);
    let mut last_map: Vec<usize> = (0..acc.vertex_count()).collect();
    for spec in &blocks[1..] {
        let next = family(spec);
        // glue either at vertex 0 (all blocks share it) or at a vertex of the previous block
        let at = if at_shared_vertex { 0 } else { *last_map.last().unwrap() };
        let c = coalesce(&acc, at, &next, 0).expect("coalescence");
        acc = c.graph;
        last_map = c.second_map;
    }
    acc
}

/// Cycles, complete bipartite graphs and coalescences of up to three blocks.
pub fn structure_battery() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push((format!("cycle:{n}"), family(&format!("cycle:{n}"))));
    }
    for m in 1..=4 {
        for n in m..=4 {
            let s = format!("complete_bipartite:{m},{n}");
            out.push((s.clone(), family(&s)));
        }
    }
    let blocks = ["complete:3", "cycle:4", "cycle:5", "complete:4", "complete_bipartite:2,3", "cycle:6"];
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i..] {
            out.push((format!("{a} + {b}"), coalesce_chain(&[a, b], true)));
        }
    }
    for (triple, shared) in [
        (["cycle:4", "cycle:4", "cycle:4"], true),
        (["cycle:4", "complete:3", "cycle:5"], false),
        (["complete:4", "cycle:4", "complete_bipartite:2,3"], false),
        (["cycle:5", "cycle:5", "complete:3"], true),
        (["complete_minus_edge:4", "cycle:4", "band:5,2"], false),
    ] {
        out.push((triple.join(" + "), coalesce_chain(&triple, shared)));
    }
    out
}
