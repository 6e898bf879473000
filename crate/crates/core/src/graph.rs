//! Undirected finite multigraphs with stable ids, the hop metric, and the
//! minor operations the rest of the crate is built on.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance reported between vertices in different components.
pub const UNREACHABLE: usize = usize::MAX;

/// An immutable undirected multigraph.
///
/// Vertices are `0..vertex_count`. Edge ids are positions in the edge list,
/// so they survive serialization unchanged. Parallel edges and self-loops
/// can be stored; analysis entry points reject loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
    // (neighbor, edge id), sorted so traversals break ties by lowest id
    adj: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    pub fn from_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertex_count];
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::invalid(alloc::format!(
                    "edge {id} ({a}, {b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            adj[a].push((b, id));
            if a != b {
                adj[b].push((a, id));
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            labels: None,
            adj,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::invalid(alloc::format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `(neighbor, edge id)` pairs in ascending order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Other endpoint of `edge` as seen from `v`.
    pub fn opposite(&self, edge: usize, v: usize) -> usize {
        let (a, b) = self.edges[edge];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn self_loop(&self) -> Option<usize> {
        self.edges.iter().position(|&(a, b)| a == b)
    }

    /// Rejects graphs with self-loops; every analysis calls this first.
    pub fn ensure_loopless(&self) -> Result<()> {
        match self.self_loop() {
            Some(edge) => Err(Error::SelfLoop { edge }),
            None => Ok(()),
        }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        seen.sort_unstable();
        let before = seen.len();
        seen.dedup();
        before == seen.len() && self.self_loop().is_none()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        self.distances_from(&[0]).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Multi-source BFS hop distances; [`UNREACHABLE`] where no path exists.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.vertex_count];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn check_set(&self, set: &VertexSet, what: &str) -> Result<()> {
        if set.is_empty() {
            return Err(Error::invalid(alloc::format!("{what} is empty")));
        }
        set.validate(self)
    }

    /// `N_M(S)`: vertices at hop distance strictly less than `radius` from `set`.
    pub fn neighborhood(&self, set: &VertexSet, radius: usize) -> Result<VertexSet> {
        self.check_set(set, "center set")?;
        let dist = self.distances_from(set.members());
        Ok(VertexSet::from_sorted_unchecked(
            (0..self.vertex_count).filter(|&v| dist[v] < radius).collect(),
        ))
    }

    /// Minimum hop distance between the two sets, [`UNREACHABLE`] if they
    /// lie in different components.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        self.check_set(a, "first set")?;
        self.check_set(b, "second set")?;
        let dist = self.distances_from(a.members());
        Ok(b.iter().map(|v| dist[v]).min().unwrap_or(UNREACHABLE))
    }

    /// Connected components of the subgraph induced on `V \ excluded`,
    /// ordered by smallest member.
    pub fn components_excluding(&self, excluded: &VertexSet) -> Vec<VertexSet> {
        let mut blocked = vec![false; self.vertex_count];
        for v in excluded.iter().filter(|&v| v < self.vertex_count) {
            blocked[v] = true;
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.vertex_count {
            if blocked[start] {
                continue;
            }
            let mut members = Vec::new();
            blocked[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                members.push(v);
                for &(w, _) in &self.adj[v] {
                    if !blocked[w] {
                        blocked[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet::new(members));
        }
        out
    }

    /// Whether `set` induces a connected subgraph. The empty set does not.
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        let Some(first) = set.iter().next() else {
            return false;
        };
        let mut seen = vec![false; self.vertex_count];
        seen[first] = true;
        let mut stack = vec![first];
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &(w, _) in &self.adj[v] {
                if !seen[w] && set.contains(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        count == set.len()
    }

    /// Subdivides every edge once. Edge `e = (a, b)` gets the new vertex
    /// `n + e` and becomes the edges `2e = (a, n+e)` and `2e+1 = (n+e, b)`.
    pub fn subdivide_all(&self) -> Multigraph {
        let n = self.vertex_count;
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            edges.push((a, n + id));
            edges.push((n + id, b));
        }
        Multigraph::from_edges(n + self.edges.len(), edges).expect("subdivision ids are valid")
    }

    pub fn minor_reduce(&self, op: ReductionOp) -> Result<Reduction> {
        let n = self.vertex_count;
        let m = self.edges.len();
        match op {
            ReductionOp::DeleteEdge(e) => {
                if e >= m {
                    return Err(Error::invalid(alloc::format!("edge {e} does not exist")));
                }
                let vertex_map = (0..n).map(Some).collect();
                let edge_map = (0..m)
                    .map(|i| match i.cmp(&e) {
                        core::cmp::Ordering::Less => Some(i),
                        core::cmp::Ordering::Equal => None,
                        core::cmp::Ordering::Greater => Some(i - 1),
                    })
                    .collect();
                self.apply(n, vertex_map, edge_map)
            }
            ReductionOp::DeleteVertex(v) => {
                if v >= n {
                    return Err(Error::invalid(alloc::format!("vertex {v} does not exist")));
                }
                let vertex_map = (0..n)
                    .map(|u| match u.cmp(&v) {
                        core::cmp::Ordering::Less => Some(u),
                        core::cmp::Ordering::Equal => None,
                        core::cmp::Ordering::Greater => Some(u - 1),
                    })
                    .collect();
                let mut next = 0;
                let edge_map = self
                    .edges
                    .iter()
                    .map(|&(a, b)| {
                        if a == v || b == v {
                            None
                        } else {
                            next += 1;
                            Some(next - 1)
                        }
                    })
                    .collect();
                self.apply(n - 1, vertex_map, edge_map)
            }
            ReductionOp::ContractEdge(e) => {
                if e >= m {
                    return Err(Error::invalid(alloc::format!("edge {e} does not exist")));
                }
                let (a, b) = self.edges[e];
                if a == b {
                    return Err(Error::invalid(alloc::format!(
                        "edge {e} is a self-loop and cannot be contracted"
                    )));
                }
                let (keep, gone) = (a.min(b), a.max(b));
                let vertex_map: Vec<Option<usize>> = (0..n)
                    .map(|u| {
                        Some(match u.cmp(&gone) {
                            core::cmp::Ordering::Less => u,
                            core::cmp::Ordering::Equal => keep,
                            core::cmp::Ordering::Greater => u - 1,
                        })
                    })
                    .collect();
                // every edge joining the two merged endpoints would become a loop
                let mut next = 0;
                let edge_map = self
                    .edges
                    .iter()
                    .map(|&(x, y)| {
                        if (x.min(y), x.max(y)) == (keep, gone) {
                            None
                        } else {
                            next += 1;
                            Some(next - 1)
                        }
                    })
                    .collect();
                self.apply(n - 1, vertex_map, edge_map)
            }
        }
    }

    fn apply(
        &self,
        new_n: usize,
        vertex_map: Vec<Option<usize>>,
        edge_map: Vec<Option<usize>>,
    ) -> Result<Reduction> {
        let mut edges = Vec::new();
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            if edge_map[id].is_some() {
                edges.push((vertex_map[a].unwrap(), vertex_map[b].unwrap()));
            }
        }
        let mut graph = Multigraph::from_edges(new_n, edges)?;
        if let Some(labels) = &self.labels {
            let mut kept = vec![String::new(); new_n];
            for (old, label) in labels.iter().enumerate().rev() {
                if let Some(new) = vertex_map[old] {
                    kept[new] = label.clone();
                }
            }
            graph.labels = Some(kept);
        }
        let disconnected = !graph.is_connected();
        Ok(Reduction {
            graph,
            vertex_map,
            edge_map,
            disconnected,
        })
    }

    /// Cyclomatic number `|E| - |V| + c` for `c` components.
    pub fn cycle_rank(&self) -> usize {
        let components = self.components_excluding(&VertexSet::default()).len();
        self.edges.len() + components - self.vertex_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionOp {
    ContractEdge(usize),
    DeleteEdge(usize),
    DeleteVertex(usize),
}

/// Result of one minor step with old-id to new-id tables.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Multigraph,
    pub vertex_map: Vec<Option<usize>>,
    pub edge_map: Vec<Option<usize>>,
    pub disconnected: bool,
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.iter().any(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::invalid(alloc::format!(
                "vertex {v} is out of range for a graph on {} vertices",
                g.vertex_count()
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// A path given by its vertex sequence and the edge ids between them.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl PathWitness {
    pub fn single(v: usize) -> Self {
        PathWitness {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// Builds the path along `vertices`, picking the lowest-id edge for each step.
    pub fn along(g: &Multigraph, vertices: Vec<usize>) -> Result<Self> {
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let edge = g
                .neighbors(w[0])
                .iter()
                .find(|&&(u, _)| u == w[1])
                .map(|&(_, e)| e)
                .ok_or_else(|| Error::invalid(alloc::format!("{} and {} are not adjacent", w[0], w[1])))?;
            edges.push(edge);
        }
        Ok(PathWitness { vertices, edges })
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[usize] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }

    pub fn reversed(&self) -> PathWitness {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        PathWitness { vertices, edges }
    }

    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return Err(Error::invalid("path needs one more vertex than edges"));
        }
        let seen = VertexSet::new(self.vertices.iter().copied());
        seen.validate(g)?;
        if seen.len() != self.vertices.len() {
            return Err(Error::invalid("path repeats a vertex"));
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if e >= g.edge_count() {
                return Err(Error::invalid(alloc::format!("edge {e} does not exist")));
            }
            let (a, b) = g.edge(e);
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            if !((a == u && b == v) || (a == v && b == u)) {
                return Err(Error::invalid(alloc::format!(
                    "edge {e} does not join {u} and {v}"
                )));
            }
        }
        Ok(())
    }
}
