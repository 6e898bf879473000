//! Disjoint path systems and minimum cuts between vertex sets.
//!
//! Both terminal sets are contracted to a super-source and super-sink and a
//! unit-capacity shortest-augmenting-path flow is run. Vertex-disjoint
//! systems split every non-terminal vertex into an in/out pair joined by a
//! unit arc. Arcs are scanned in ascending order of target vertex id, so
//! the decomposed paths are deterministic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, PathWitness, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisjointMode {
    EdgeDisjoint,
    InternallyVertexDisjoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<PathWitness>,
    pub mode: DisjointMode,
    pub sources: VertexSet,
    pub sinks: VertexSet,
}

impl PathSystem {
    /// Re-walks every path and checks endpoints and disjointness.
    pub fn verify(&self, g: &Multigraph) -> Result<()> {
        let mut used_edges = vec![false; g.edge_count()];
        let mut used_vertices = vec![false; g.vertex_count()];
        for (i, p) in self.paths.iter().enumerate() {
            p.validate(g)?;
            if !self.sources.contains(p.first()) || !self.sinks.contains(p.last()) {
                return Err(Error::invalid(alloc::format!("path {i} does not run from sources to sinks")));
            }
            if p.interior().iter().any(|&v| self.sources.contains(v) || self.sinks.contains(v)) {
                return Err(Error::invalid(alloc::format!("path {i} re-enters a terminal set")));
            }
            match self.mode {
                DisjointMode::EdgeDisjoint => {
                    for &e in &p.edges {
                        if core::mem::replace(&mut used_edges[e], true) {
                            return Err(Error::invalid(alloc::format!("edge {e} used twice")));
                        }
                    }
                }
                DisjointMode::InternallyVertexDisjoint => {
                    for &v in p.interior() {
                        if core::mem::replace(&mut used_vertices[v], true) {
                            return Err(Error::invalid(alloc::format!("vertex {v} used twice")));
                        }
                    }
                    for &e in &p.edges {
                        if core::mem::replace(&mut used_edges[e], true) {
                            return Err(Error::invalid(alloc::format!("edge {e} used twice")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutKind {
    EdgeCut,
    VertexCut,
    FatCut,
}

/// A set of edges, vertices, or fat-cut centers meeting every X,Y path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub kind: CutKind,
    pub members: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
}

impl CutCertificate {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Checks that removing the cut leaves no X,Y path.
    pub fn separates(&self, g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        match self.kind {
            CutKind::EdgeCut => {
                let mut removed = vec![false; g.edge_count()];
                for &e in &self.members {
                    if e >= g.edge_count() {
                        return Err(Error::invalid(alloc::format!("edge {e} does not exist")));
                    }
                    removed[e] = true;
                }
                let mut seen = vec![false; g.vertex_count()];
                let mut stack: Vec<usize> = x.iter().collect();
                for v in x.iter() {
                    seen[v] = true;
                }
                while let Some(v) = stack.pop() {
                    if y.contains(v) {
                        return Ok(false);
                    }
                    for &(w, e) in g.neighbors(v) {
                        if !removed[e] && !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                Ok(true)
            }
            CutKind::VertexCut | CutKind::FatCut => {
                let centers = VertexSet::new(self.members.iter().copied());
                if centers.iter().any(|v| x.contains(v) || y.contains(v)) {
                    return Ok(false);
                }
                let removed = match self.kind {
                    CutKind::FatCut => g.neighborhood(&centers, self.radius.unwrap_or(1))?,
                    _ => centers,
                };
                let xs = x.difference(&removed);
                let ys = y.difference(&removed);
                if xs.is_empty() || ys.is_empty() {
                    return Ok(false);
                }
                let comps = g.components_excluding(&removed);
                Ok(comps
                    .iter()
                    .all(|c| !(xs.iter().any(|v| c.contains(v)) && ys.iter().any(|v| c.contains(v)))))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDisjointResult {
    pub count: usize,
    pub paths: PathSystem,
    pub cut: CutCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDisjointResult {
    pub count: usize,
    pub paths: PathSystem,
    /// `None` when an edge joins the terminal sets, so no separator exists.
    pub cut: Option<CutCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityProfile {
    pub lambda_min: usize,
    pub lambda_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tag {
    Edge { id: usize, from: usize, to: usize },
    Split,
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    base: u32,
    rev: usize,
    tag: Tag,
}

/// Residual network over `nodes` nodes with unit-ish capacities.
struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl Network {
    fn new(nodes: usize, source: usize, sink: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            source,
            sink,
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32, back: u32, tag: Tag, back_tag: Tag) {
        let i = self.arcs.len();
        self.arcs.push(Arc { to, cap, base: cap, rev: i + 1, tag });
        self.arcs.push(Arc { to: from, cap: back, base: back, rev: i, tag: back_tag });
        self.out[from].push(i);
        self.out[to].push(i + 1);
    }

    fn sort_arcs(&mut self) {
        let arcs = &self.arcs;
        for list in &mut self.out {
            list.sort_by_key(|&a| {
                let key = match arcs[a].tag {
                    Tag::Edge { id, to, .. } => (to, id),
                    Tag::Split => (usize::MAX, 0),
                };
                (key, a)
            });
        }
    }

    fn augment(&mut self, limit: usize) -> usize {
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.out.len()];
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::new();
            queue.push_back(self.source);
            let mut found = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && arc.to != self.source && parent[arc.to] == usize::MAX {
                        parent[arc.to] = a;
                        if arc.to == self.sink {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !found {
                break;
            }
            let mut v = self.sink;
            while v != self.source {
                let a = parent[v];
                self.arcs[a].cap -= 1;
                let r = self.arcs[a].rev;
                self.arcs[r].cap += 1;
                v = self.arcs[r].to;
            }
            flow += 1;
        }
        flow
    }

    fn residual_reach(&self) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }

    /// Splits the flow into source-sink arc sequences, lowest ids first.
    fn decompose(&mut self) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        loop {
            let mut on_path = vec![false; self.out.len()];
            let mut stack: Vec<(usize, usize)> = vec![(self.source, 0)];
            let mut arcs_taken: Vec<usize> = Vec::new();
            on_path[self.source] = true;
            let mut reached = false;
            while let Some(top) = stack.len().checked_sub(1) {
                let u = stack[top].0;
                if u == self.sink {
                    reached = true;
                    break;
                }
                let mut advanced = false;
                while stack[top].1 < self.out[u].len() {
                    let a = self.out[u][stack[top].1];
                    stack[top].1 += 1;
                    let arc = &self.arcs[a];
                    if arc.cap < arc.base && !on_path[arc.to] {
                        on_path[arc.to] = true;
                        arcs_taken.push(a);
                        stack.push((arc.to, 0));
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    stack.pop();
                    arcs_taken.pop();
                }
            }
            if !reached {
                break;
            }
            for &a in &arcs_taken {
                self.arcs[a].cap += 1;
                let r = self.arcs[a].rev;
                self.arcs[r].cap -= 1;
            }
            paths.push(arcs_taken);
        }
        paths
    }

    fn to_witness(&self, arcs: &[usize]) -> PathWitness {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for &a in arcs {
            if let Tag::Edge { id, from, to } = self.arcs[a].tag {
                if vertices.is_empty() {
                    vertices.push(from);
                }
                vertices.push(to);
                edges.push(id);
            }
        }
        PathWitness { vertices, edges }
    }
}

/// Which side of the flow each vertex is on.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Free,
    Source,
    Sink,
}

pub(crate) fn sides(n: usize, x: &VertexSet, y: &VertexSet) -> Vec<Side> {
    let mut side = vec![Side::Free; n];
    for v in x.iter() {
        side[v] = Side::Source;
    }
    for v in y.iter() {
        side[v] = Side::Sink;
    }
    side
}

fn edge_network(g: &Multigraph, side: &[Side]) -> Network {
    let n = g.vertex_count();
    let (s, t) = (n, n + 1);
    let node = |v: usize| match side[v] {
        Side::Source => s,
        Side::Sink => t,
        Side::Free => v,
    };
    let mut net = Network::new(n + 2, s, t);
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        let (na, nb) = (node(a), node(b));
        if na == nb {
            continue;
        }
        net.add(
            na,
            nb,
            1,
            1,
            Tag::Edge { id, from: a, to: b },
            Tag::Edge { id, from: b, to: a },
        );
    }
    net.sort_arcs();
    net
}

fn vertex_network(g: &Multigraph, side: &[Side]) -> Network {
    let n = g.vertex_count();
    let (s, t) = (2 * n, 2 * n + 1);
    let entry = |v: usize| match side[v] {
        Side::Source => s,
        Side::Sink => t,
        Side::Free => 2 * v,
    };
    let exit = |v: usize| match side[v] {
        Side::Source => s,
        Side::Sink => t,
        Side::Free => 2 * v + 1,
    };
    let mut net = Network::new(2 * n + 2, s, t);
    for v in 0..n {
        if side[v] == Side::Free {
            net.add(2 * v, 2 * v + 1, 1, 0, Tag::Split, Tag::Split);
        }
    }
    // only split arcs may be cut, except direct X-Y edges which carry one path each
    let wide = n as u32 + 1;
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        for (u, w) in [(a, b), (b, a)] {
            let (from, to) = (exit(u), entry(w));
            if from == to || from == t || to == s {
                continue;
            }
            net.add(
                from,
                to,
                if from == s && to == t { 1 } else { wide },
                0,
                Tag::Edge { id, from: u, to: w },
                Tag::Edge { id, from: w, to: u },
            );
        }
    }
    net.sort_arcs();
    net
}

pub(crate) fn edge_flow_count(g: &Multigraph, side: &[Side], limit: usize) -> usize {
    edge_network(g, side).augment(limit)
}

pub(crate) fn vertex_flow_count(g: &Multigraph, side: &[Side], limit: usize) -> usize {
    vertex_network(g, side).augment(limit)
}

fn check_terminals(g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<()> {
    g.ensure_loopless()?;
    for (set, name) in [(x, "X"), (y, "Y")] {
        if set.is_empty() {
            return Err(Error::invalid(alloc::format!("{name} is empty")));
        }
        set.validate(g)?;
        if !g.induces_connected(set) {
            return Err(Error::invalid(alloc::format!("{name} does not induce a connected subgraph")));
        }
    }
    if !x.is_disjoint(y) {
        return Err(Error::invalid("X and Y intersect"));
    }
    Ok(())
}

/// Maximum number of pairwise edge-disjoint X,Y paths with a minimum edge cut.
pub fn max_edge_disjoint(g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<EdgeDisjointResult> {
    check_terminals(g, x, y)?;
    let side = sides(g.vertex_count(), x, y);
    let mut net = edge_network(g, &side);
    let count = net.augment(usize::MAX);
    let reach = net.residual_reach();
    let n = g.vertex_count();
    let node = |v: usize| match side[v] {
        Side::Source => n,
        Side::Sink => n + 1,
        Side::Free => v,
    };
    let members: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(a, b))| reach[node(a)] != reach[node(b)])
        .map(|(id, _)| id)
        .collect();
    assert_eq!(members.len(), count, "edge cut size must equal the flow value");
    let paths = net.decompose().iter().map(|p| net.to_witness(p)).collect();
    Ok(EdgeDisjointResult {
        count,
        paths: PathSystem {
            paths,
            mode: DisjointMode::EdgeDisjoint,
            sources: x.clone(),
            sinks: y.clone(),
        },
        cut: CutCertificate {
            kind: CutKind::EdgeCut,
            members,
            radius: None,
        },
    })
}

/// Maximum number of internally vertex-disjoint X,Y paths, with a minimum
/// vertex separator avoiding `X ∪ Y` when no edge joins X to Y.
pub fn max_vertex_disjoint(g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<VertexDisjointResult> {
    check_terminals(g, x, y)?;
    let side = sides(g.vertex_count(), x, y);
    let mut net = vertex_network(g, &side);
    let count = net.augment(usize::MAX);
    let adjacent = g
        .edges()
        .iter()
        .any(|&(a, b)| matches!((side[a], side[b]), (Side::Source, Side::Sink) | (Side::Sink, Side::Source)));
    let cut = if adjacent {
        None
    } else {
        let reach = net.residual_reach();
        let members: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| side[v] == Side::Free && reach[2 * v] && !reach[2 * v + 1])
            .collect();
        assert_eq!(members.len(), count, "vertex separator size must equal the flow value");
        Some(CutCertificate {
            kind: CutKind::VertexCut,
            members,
            radius: None,
        })
    };
    let paths = net.decompose().iter().map(|p| net.to_witness(p)).collect();
    Ok(VertexDisjointResult {
        count,
        paths: PathSystem {
            paths,
            mode: DisjointMode::InternallyVertexDisjoint,
            sources: x.clone(),
            sinks: y.clone(),
        },
        cut,
    })
}

/// Local edge connectivity between two vertices.
pub fn local_edge_connectivity(g: &Multigraph, u: usize, v: usize) -> usize {
    let side = sides(g.vertex_count(), &VertexSet::singleton(u), &VertexSet::singleton(v));
    edge_flow_count(g, &side, usize::MAX)
}

/// Global edge connectivity and the largest local edge connectivity.
pub fn connectivity_profile(g: &Multigraph, with_table: bool) -> Result<ConnectivityProfile> {
    g.ensure_loopless()?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::invalid("connectivity needs at least two vertices"));
    }
    g.ensure_connected()?;
    let mut table = with_table.then(|| vec![vec![0usize; n]; n]);
    let mut lambda_min = usize::MAX;
    let mut lambda_max = 0;
    for u in 0..n {
        for v in u + 1..n {
            let l = local_edge_connectivity(g, u, v);
            if u == 0 {
                lambda_min = lambda_min.min(l);
            }
            lambda_max = lambda_max.max(l);
            if let Some(t) = table.as_mut() {
                t[u][v] = l;
                t[v][u] = l;
            }
        }
    }
    Ok(ConnectivityProfile {
        lambda_min,
        lambda_max,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn edge_disjoint_examples() {
        let r = max_edge_disjoint(&complete(4), &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(r.count, 3);
        r.paths.verify(&complete(4)).unwrap();
        assert!(r.cut.separates(&complete(4), &set(&[0]), &set(&[1])).unwrap());

        let c6 = cycle(6);
        let r = max_edge_disjoint(&c6, &set(&[0]), &set(&[3])).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.paths.paths[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(r.paths.paths[1].vertices, vec![0, 5, 4, 3]);

        let r = max_edge_disjoint(&path(5), &set(&[0, 1]), &set(&[4])).unwrap();
        assert_eq!(r.count, 1);
    }

    #[test]
    fn terminal_errors() {
        let c6 = cycle(6);
        assert!(max_edge_disjoint(&c6, &set(&[0, 1]), &set(&[1])).is_err());
        assert!(max_edge_disjoint(&c6, &set(&[0, 2]), &set(&[4])).is_err());
        let looped = graph(2, &[(0, 1), (1, 1)]);
        assert_eq!(
            max_edge_disjoint(&looped, &set(&[0]), &set(&[1])).unwrap_err(),
            Error::SelfLoop { edge: 1 }
        );
    }

    #[test]
    fn vertex_disjoint_examples() {
        let c6 = cycle(6);
        let r = max_vertex_disjoint(&c6, &set(&[0]), &set(&[3])).unwrap();
        assert_eq!(r.count, 2);
        let cut = r.cut.unwrap();
        assert_eq!(cut.size(), 2);
        assert!(cut.separates(&c6, &set(&[0]), &set(&[3])).unwrap());

        let r = max_vertex_disjoint(&complete(4), &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(r.count, 3);
        assert!(r.cut.is_none());

        let r = max_vertex_disjoint(&path(5), &set(&[0]), &set(&[4])).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.cut.unwrap().size(), 1);
    }

    #[test]
    fn parallel_edges_count_separately() {
        let d3 = dipole(3);
        assert_eq!(max_edge_disjoint(&d3, &set(&[0]), &set(&[1])).unwrap().count, 3);
        let r = max_vertex_disjoint(&d3, &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(r.count, 3);
        r.paths.verify(&d3).unwrap();
    }

    #[test]
    fn profiles() {
        let p = connectivity_profile(&complete(4), true).unwrap();
        assert_eq!((p.lambda_min, p.lambda_max), (3, 3));
        assert_eq!(p.table.unwrap()[1][2], 3);
        let p = connectivity_profile(&path(6), false).unwrap();
        assert_eq!((p.lambda_min, p.lambda_max), (1, 1));
        let p = connectivity_profile(&bowtie(), false).unwrap();
        assert_eq!((p.lambda_min, p.lambda_max), (2, 2));
        assert!(connectivity_profile(&path(1), false).is_err());
    }
}
