//! Graph file formats: canonical JSON, plain edge lists, and DOT export.
//!
//! JSON is the interchange format: `{"n": 5, "edges": [[0,1],...],
//! "labels": {"0": "...", ...}}` with `labels` optional. The edge-list format
//! is `n m` on the first line followed by `m` lines `u v`; it cannot carry
//! labels. DOT output is write-only, for visualization.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Result};

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<String, String>>,
}

/// Serializes a graph to its canonical JSON form: edges sorted with `u < v`,
/// labels keyed by decimal vertex id. Byte-stable for equal graphs.
pub fn to_json(g: &Graph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges(),
        labels: g.labels().map(|ls| {
            ls.iter()
                .enumerate()
                .map(|(v, l)| (v.to_string(), l.clone()))
                .collect()
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::MalformedGraph(e.to_string()))?;
    let g = Graph::new(doc.n, &doc.edges)?;
    match doc.labels {
        None => Ok(g),
        Some(map) => {
            let mut labels = vec![None; doc.n];
            for (key, label) in map {
                let v: usize = key
                    .parse()
                    .map_err(|_| Error::MalformedGraph(format!("bad label key {key:?}")))?;
                if v >= doc.n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n: doc.n,
                    });
                }
                labels[v] = Some(label);
            }
            let got = labels.iter().flatten().count();
            if got != doc.n {
                return Err(Error::PartialLabels { n: doc.n, got });
            }
            g.with_labels(labels.into_iter().flatten().collect())
        }
    }
}

/// Writes the `n m` / `u v` edge-list form. Labels are not representable;
/// returns true when labels were present and therefore dropped.
pub fn to_edge_list(g: &Graph) -> (String, bool) {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    (s, g.labels().is_some())
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedGraph("empty edge-list file".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::MalformedGraph("bad or missing vertex count".into()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::MalformedGraph("bad or missing edge count".into()))?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::MalformedGraph(format!("bad edge line {line:?}")))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::MalformedGraph(format!("bad edge line {line:?}")))?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::MalformedGraph(format!(
            "edge count mismatch: header says {m}, found {}",
            edges.len()
        )));
    }
    Graph::new(n, &edges)
}

/// DOT rendering, one `u -- v;` line per edge, labels as node attributes.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        match g.label(v) {
            Some(l) => {
                let _ = writeln!(s, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// Reads a graph file, choosing the format by content: JSON if the first
/// non-space byte is `{`, edge list otherwise.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    match text.trim_start().chars().next() {
        Some('{') => from_json(&text),
        _ => from_edge_list(&text),
    }
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    std::fs::write(path, to_json(g))?;
    Ok(())
}
