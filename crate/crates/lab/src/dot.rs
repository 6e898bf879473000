//! Graphviz export with witnesses drawn on top of the graph.

use std::collections::BTreeMap;
use std::fmt::Write;

use bottleneck_core::{Multigraph, PathWitness, VertexSet};

const POLE_X: &str = "#6baed6";
const POLE_Y: &str = "#f4a6c6";
const RUNGS: [&str; 8] = [
    "#e6550d", "#31a354", "#756bb1", "#636363", "#d6a100", "#17becf", "#8c564b", "#bcbd22",
];
const CUT: &str = "#d62728";

/// What to draw over the plain graph.
#[derive(Debug, Clone, Default)]
pub struct Highlight {
    pub pole_x: Option<VertexSet>,
    pub pole_y: Option<VertexSet>,
    pub rungs: Vec<PathWitness>,
    pub cut_edges: Vec<usize>,
    pub cut_vertices: Vec<usize>,
    pub centers: Vec<usize>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(g: &Multigraph, h: &Highlight) -> String {
    let mut fill: BTreeMap<usize, &str> = BTreeMap::new();
    let mut edge_color: BTreeMap<usize, &str> = BTreeMap::new();
    for (i, r) in h.rungs.iter().enumerate() {
        let c = RUNGS[i % RUNGS.len()];
        for &v in r.interior() {
            fill.insert(v, c);
        }
        for &e in &r.edges {
            edge_color.insert(e, c);
        }
    }
    for (set, c) in [(&h.pole_x, POLE_X), (&h.pole_y, POLE_Y)] {
        for v in set.iter().flat_map(|s| s.iter()) {
            fill.insert(v, c);
        }
    }

    let mut s = String::from("graph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    for v in 0..g.vertex_count() {
        let mut attrs = Vec::new();
        if let Some(l) = g.labels() {
            attrs.push(format!("label={}", quote(&l[v])));
        }
        if let Some(c) = fill.get(&v) {
            attrs.push(format!("fillcolor={}", quote(c)));
        }
        if h.cut_vertices.contains(&v) {
            attrs.push(format!("color={}, penwidth=3", quote(CUT)));
        }
        if h.centers.contains(&v) {
            attrs.push("shape=doublecircle".into());
        }
        if attrs.is_empty() {
            writeln!(s, "  {v};").unwrap();
        } else {
            writeln!(s, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        let mut attrs = Vec::new();
        if let Some(c) = edge_color.get(&id) {
            attrs.push(format!("color={}, penwidth=2.5", quote(c)));
        }
        if h.cut_edges.contains(&id) {
            attrs.push(format!("color={}, style=dashed, penwidth=2.5", quote(CUT)));
        }
        if attrs.is_empty() {
            writeln!(s, "  {a} -- {b};").unwrap();
        } else {
            writeln!(s, "  {a} -- {b} [{}];", attrs.join(", ")).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles_and_rungs_are_colored() {
        let g = Multigraph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = Highlight {
            pole_x: Some(VertexSet::singleton(0)),
            pole_y: Some(VertexSet::singleton(2)),
            rungs: vec![
                PathWitness::along(&g, vec![0, 1, 2]).unwrap(),
                PathWitness::along(&g, vec![0, 3, 2]).unwrap(),
            ],
            ..Highlight::default()
        };
        let d = render(&g, &h);
        assert!(d.starts_with("graph G {"));
        assert!(d.contains(&format!("0 [fillcolor=\"{POLE_X}\"]")));
        assert!(d.contains(&format!("2 [fillcolor=\"{POLE_Y}\"]")));
        assert!(d.contains(&format!("0 -- 1 [color=\"{}\"", RUNGS[0])));
        assert!(d.contains(&format!("2 -- 3 [color=\"{}\"", RUNGS[1])));
        assert!(d.trim_end().ends_with('}'));
    }
}
