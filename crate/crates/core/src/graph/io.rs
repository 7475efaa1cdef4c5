//! DIMACS-style edge-list text.
//!
//! ```text
//! c optional comment
//! p 3 2
//! e 1 2
//! e 2 3
//! ```
//!
//! Endpoints are 1-based. Blank lines and `c` lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::empty(0);
    let mut seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let perr = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(perr("second `p` header".into()));
                }
                // accept both `p n m` and `p edge n m`
                let nums: Vec<&str> = tokens[1..]
                    .iter()
                    .copied()
                    .filter(|t| *t != "edge")
                    .collect();
                if nums.len() != 2 {
                    return Err(perr("header must be `p <n> <m>`".into()));
                }
                let n = nums[0]
                    .parse::<usize>()
                    .map_err(|_| perr(format!("bad vertex count `{}`", nums[0])))?;
                let m = nums[1]
                    .parse::<usize>()
                    .map_err(|_| perr(format!("bad edge count `{}`", nums[1])))?;
                header = Some((n, m));
                graph = Graph::empty(n);
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(perr("edge line before `p` header".into()));
                };
                if tokens.len() != 3 {
                    return Err(perr("edge line must be `e <i> <j>`".into()));
                }
                let endpoint = |t: &str| -> Result<usize> {
                    let v = t
                        .parse::<usize>()
                        .map_err(|_| perr(format!("bad endpoint `{t}`")))?;
                    if v == 0 || v > n {
                        return Err(perr(format!("endpoint {v} outside 1..={n}")));
                    }
                    Ok(v - 1)
                };
                let (i, j) = (endpoint(tokens[1])?, endpoint(tokens[2])?);
                if i == j {
                    return Err(Error::Validation(format!(
                        "line {line_no}: self-loop at vertex {}",
                        i + 1
                    )));
                }
                if !graph.insert_edge(i, j) {
                    return Err(Error::Validation(format!(
                        "line {line_no}: duplicate edge {} {}",
                        i + 1,
                        j + 1
                    )));
                }
                seen += 1;
            }
            other => return Err(perr(format!("unknown line type `{other}`"))),
        }
    }
    let Some((_, m)) = header else {
        return Err(Error::Parse {
            line: 1,
            message: "missing `p` header".into(),
        });
    };
    if seen != m {
        return Err(Error::Validation(format!(
            "header declares {m} edges but {seen} were given"
        )));
    }
    Ok(graph)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Writes the header and the edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "e {} {}", i + 1, j + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_edge_list("p 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn isolated_vertices() {
        let g = parse_edge_list("c two lonely vertices\n\np 2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edge_before_header_is_a_parse_error_on_line_one() {
        match parse_edge_list("e 1 2\np 2 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicates_and_bad_lines() {
        assert!(matches!(
            parse_edge_list("p 3 2\ne 1 2\ne 2 1\n"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_edge_list("p 3 1\ne 1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("p 3 1\nx 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_edge_list("p 3 2\ne 1 2\n").is_err());
    }

    #[test]
    fn writer_sorts_and_round_trips() {
        let g = Graph::from_edges(4, &[(3, 2), (0, 3), (1, 0)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "p 4 3\ne 1 2\ne 1 4\ne 3 4\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_edge_list("p edge 4 3\ne 1 2\ne 1 4\ne 3 4\n").unwrap(), g);
    }
}
