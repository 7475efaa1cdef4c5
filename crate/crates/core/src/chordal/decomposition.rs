use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{arg, Result};
use crate::graph::Graph;

/// Why a triple `(A, C, B)` fails to decompose a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionCertificate {
    /// A path from `A` to `B` that avoids `C`.
    Path(Vec<usize>),
    /// Two vertices of `C` that are not adjacent.
    MissingEdge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub valid: bool,
    pub certificate: Option<DecompositionCertificate>,
}

/// Checks that `c` separates `a` from `b` and that `c` is complete.
pub fn verify_decomposition(
    g: &Graph,
    a: &[usize],
    c: &[usize],
    b: &[usize],
) -> Result<DecompositionCheck> {
    let n = g.vertex_count();
    #[derive(Clone, Copy, PartialEq)]
    enum Part {
        None,
        A,
        C,
        B,
    }
    let mut part = vec![Part::None; n];
    for (set, tag) in [(a, Part::A), (c, Part::C), (b, Part::B)] {
        for &v in set {
            if v >= n {
                return Err(arg(format!("vertex {v} out of range for {n} vertices")));
            }
            if part[v] != Part::None {
                return Err(arg(format!("vertex {v} is in more than one part")));
            }
            part[v] = tag;
        }
    }
    if part.contains(&Part::None) {
        return Err(arg("A, C and B must cover every vertex"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(arg("A and B must be nonempty"));
    }

    let mut parent = vec![usize::MAX; n];
    let mut queue: VecDeque<usize> = a.iter().copied().collect();
    for &v in a {
        parent[v] = v;
    }
    while let Some(x) = queue.pop_front() {
        if part[x] == Part::B {
            let mut path = vec![x];
            let mut cur = x;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Ok(DecompositionCheck {
                valid: false,
                certificate: Some(DecompositionCertificate::Path(path)),
            });
        }
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX && part[y] != Part::C {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }

    for (k, &x) in c.iter().enumerate() {
        if let Some(&y) = c[k + 1..].iter().find(|&&y| !g.has_edge(x, y)) {
            return Ok(DecompositionCheck {
                valid: false,
                certificate: Some(DecompositionCertificate::MissingEdge(x.min(y), x.max(y))),
            });
        }
    }
    Ok(DecompositionCheck {
        valid: true,
        certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn family(s: &str) -> Graph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let ok = verify_decomposition(&family("path:3"), &[0], &[1], &[2]).unwrap();
        assert!(ok.valid);

        let bad = verify_decomposition(&family("cycle:4"), &[0], &[1], &[2, 3]).unwrap();
        assert!(!bad.valid);
        assert_eq!(bad.certificate, Some(DecompositionCertificate::Path(vec![0, 3])));

        let ok = verify_decomposition(&family("complete_minus_edge:4"), &[0], &[1, 2], &[3]).unwrap();
        assert!(ok.valid);
    }

    #[test]
    fn incomplete_separator() {
        let check = verify_decomposition(&family("cycle:4"), &[0], &[1, 3], &[2]).unwrap();
        assert_eq!(check.certificate, Some(DecompositionCertificate::MissingEdge(1, 3)));
    }

    #[test]
    fn non_partitions_are_rejected() {
        let g = family("path:3");
        assert!(verify_decomposition(&g, &[0], &[1], &[1, 2]).is_err());
        assert!(verify_decomposition(&g, &[0], &[1], &[]).is_err());
        assert!(verify_decomposition(&g, &[0], &[], &[2]).is_err());
        assert!(verify_decomposition(&g, &[0], &[1], &[3]).is_err());
    }
}
