//! Graph file I/O: DIMACS edge format and a JSON document format.
//!
//! DIMACS uses the `p edge n m` header and 1-based `e i j` lines. The JSON
//! document is `{n, edges: [[i, j], ...], labels?, props?}` with 0-based
//! vertex indices. Property names found in an input file are recorded as
//! assertions on the loaded graph and echoed back on save; checkers never
//! trust them.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    props: Option<Vec<String>>,
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                let kind = parts.next().unwrap_or("");
                if kind != "edge" && kind != "col" {
                    return Err(Error::Invalid(format!(
                        "line {}: unsupported problem type {kind:?}",
                        lineno + 1
                    )));
                }
                let nv: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Invalid(format!("line {}: bad p line", lineno + 1)))?;
                n = Some(nv);
            }
            Some("e") => {
                let i: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Invalid(format!("line {}: bad edge", lineno + 1)))?;
                let j: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Invalid(format!("line {}: bad edge", lineno + 1)))?;
                if i == 0 || j == 0 {
                    return Err(Error::Invalid(format!(
                        "line {}: DIMACS vertices are 1-based",
                        lineno + 1
                    )));
                }
                edges.push((i - 1, j - 1));
            }
            Some(other) => {
                return Err(Error::Invalid(format!(
                    "line {}: unknown directive {other:?}",
                    lineno + 1
                )))
            }
            None => {}
        }
    }
    let n = n.ok_or_else(|| Error::Invalid("missing p edge header".into()))?;
    Graph::from_edges(n, &edges)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (i, j) in g.edges() {
        out.push_str(&format!("e {} {}\n", i + 1, j + 1));
    }
    out
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad graph json: {e}")))?;
    let mut g = Graph::from_edges(doc.n, &doc.edges)?;
    if let Some(labels) = doc.labels {
        if labels.len() != doc.n {
            return Err(Error::Invalid("labels length differs from n".into()));
        }
        g.set_labels(labels);
    }
    if let Some(props) = doc.props {
        g.set_asserted_props(props);
    }
    Ok(g)
}

pub fn write_json(g: &Graph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges(),
        labels: g.labels().map(|l| l.to_vec()),
        props: if g.asserted_props().is_empty() {
            None
        } else {
            Some(g.asserted_props().to_vec())
        },
    };
    serde_json::to_string_pretty(&doc).expect("graph json serialization")
}

/// Load a graph by file extension: `.dimacs`/`.col` or `.json`.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_json(&text),
        Some("dimacs") | Some("col") | Some("edge") => parse_dimacs(&text),
        other => Err(Error::Invalid(format!(
            "unknown graph file extension {other:?} for {}",
            path.display()
        ))),
    }
}

/// Save a graph by file extension, mirroring [`load_graph`].
pub fn save_graph(g: &Graph, path: &Path) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => write_json(g),
        Some("dimacs") | Some("col") | Some("edge") => write_dimacs(g),
        other => {
            return Err(Error::Invalid(format!(
                "unknown graph file extension {other:?} for {}",
                path.display()
            )))
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Caps;

    #[test]
    fn dimacs_round_trip() {
        let g = families::make_kneser(5, 2, &Caps::default()).unwrap();
        let text = write_dimacs(&g);
        assert!(text.starts_with("p edge 10 15\n"));
        let h = parse_dimacs(&text).unwrap();
        assert!(g.same_adjacency(&h));
    }

    #[test]
    fn json_round_trip_with_asserted_props() {
        let text = r#"{"n": 3, "edges": [[0,1],[1,2]], "props": ["vertex-transitive"]}"#;
        let g = parse_json(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        // asserted props are echoed, not trusted
        assert_eq!(g.asserted_props(), &["vertex-transitive".to_string()]);
        assert!(!g.props().vertex_transitive);
        let out = write_json(&g);
        assert!(out.contains("vertex-transitive"));
    }

    #[test]
    fn dimacs_rejects_zero_based() {
        assert!(parse_dimacs("p edge 2 1\ne 0 1\n").is_err());
    }
}
