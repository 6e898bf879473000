//! Edge-list and JSON graph files.
//!
//! Both readers canonicalize: every edge is stored as `(min, max)` and the
//! edge list is sorted, so edge ids in reports refer to sorted positions.

use std::fmt::Write;

use bottleneck_core::Multigraph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("vertex {id} is out of range for {vertices} vertices")]
    Dangling { id: usize, vertices: usize },
    #[error("vertex ids must be contiguous, but {}", gap_text(*.first, *.last))]
    Gap { first: usize, last: usize },
    #[error("no edges")]
    Empty,
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Graph(String),
}

fn gap_text(first: usize, last: usize) -> String {
    if first == last {
        format!("vertex {first} never appears")
    } else {
        format!("vertices {first}..{last} never appear")
    }
}

/// The JSON graph document: `{"vertices": N, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphDoc {
    pub fn of(g: &Multigraph) -> Self {
        GraphDoc {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_graph(&self) -> Result<Multigraph, ParseError> {
        for e in &self.edges {
            if let Some(&id) = e.iter().find(|&&v| v >= self.vertices) {
                return Err(ParseError::Dangling {
                    id,
                    vertices: self.vertices,
                });
            }
        }
        let g = build(self.vertices, self.edges.iter().map(|e| (e[0], e[1])).collect())?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()).map_err(|e| ParseError::Graph(e.to_string())),
            None => Ok(g),
        }
    }
}

fn build(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Multigraph, ParseError> {
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    Multigraph::from_edges(n, edges).map_err(|e| ParseError::Graph(e.to_string()))
}

/// Same graph with edges stored as sorted `(min, max)` pairs.
pub fn canonical(g: &Multigraph) -> Multigraph {
    let c = build(g.vertex_count(), g.edges().to_vec()).expect("edges already in range");
    match g.labels() {
        Some(l) => c.with_labels(l.to_vec()).expect("label count unchanged"),
        None => c,
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Multigraph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Json => {
            let doc: GraphDoc = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
            doc.to_graph()
        }
    }
}

/// One `u v` pair per line; `#` starts a comment. The vertex count is one
/// more than the largest id, and every id below it must appear.
pub fn parse_edge_list(text: &str) -> Result<Multigraph, ParseError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| ParseError::Line { line: i + 1, msg };
        let ids: Vec<&str> = line.split_whitespace().collect();
        if ids.len() != 2 {
            return Err(bad(format!("expected two vertex ids, found {}", ids.len())));
        }
        let mut pair = [0usize; 2];
        for (slot, tok) in pair.iter_mut().zip(&ids) {
            *slot = tok.parse().map_err(|_| bad(format!("`{tok}` is not a vertex id")))?;
        }
        edges.push((pair[0], pair[1]));
    }
    let Some(max) = edges.iter().map(|&(a, b)| a.max(b)).max() else {
        return Err(ParseError::Empty);
    };
    let n = max + 1;
    let mut seen = vec![false; n];
    for &(a, b) in &edges {
        seen[a] = true;
        seen[b] = true;
    }
    if let Some(first) = seen.iter().position(|&s| !s) {
        let last = first + seen[first..].iter().take_while(|&&s| !s).count() - 1;
        return Err(ParseError::Gap { first, last });
    }
    build(n, edges)
}

pub fn to_edge_list(g: &Multigraph) -> String {
    let mut s = String::new();
    for &(a, b) in g.edges() {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}

pub fn to_json(g: &Multigraph) -> String {
    serde_json::to_string(&GraphDoc::of(g)).expect("graph documents serialize")
}

pub fn serialize_graph(g: &Multigraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => to_edge_list(g),
        GraphFormat::Json => to_json(g) + "\n",
    }
}
