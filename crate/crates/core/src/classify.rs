//! Recognizers for trees (1-bottlenecked), cacti (2-) and cut-cacti (3-).
//!
//! Each level is decided by conditions computed independently of each
//! other, so their agreement can be tested.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bottleneck::{edge_bottleneck_exact, find_dipole_ladder, Budget, Search};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, PathWitness, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassLabel {
    Tree,
    Cactus,
    CutCactus,
    General,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Tree => "tree",
            ClassLabel::Cactus => "cactus",
            ClassLabel::CutCactus => "cut-cactus",
            ClassLabel::General => "general",
        }
    }
}

/// How two cycles meet, ordered from mildest to worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionKind {
    Empty,
    SingleVertex,
    ConnectedMultiVertex,
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    /// Vertices in cyclic order, first vertex not repeated.
    pub vertices: Vec<usize>,
    /// Sorted edge ids.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub cycle_count: usize,
    pub worst: IntersectionKind,
    pub pair: Option<(Cycle, Cycle)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub no_cycles: bool,
    /// Every pair of sampled vertices is joined by exactly one path.
    pub unique_path: bool,
    /// Every block is a single edge or a cycle.
    pub cactus_blocks: bool,
    /// `None` when the `D_3` search ran out of budget.
    pub no_d3_minor: Option<bool>,
    /// `None` when the `D_4` search ran out of budget.
    pub no_d4_minor: Option<bool>,
    /// Worst pairwise cycle intersection, when the oracle is affordable.
    pub cycle_intersection: Option<IntersectionKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub label: ClassLabel,
    pub edge_bottleneck: Option<usize>,
    pub evidence: Evidence,
}

/// Default cycle cap for the intersection oracle.
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

/// Edge sets of the biconnected blocks, each sorted. Bridges are blocks of
/// one edge; parallel edges share a block.
pub fn blocks(g: &Multigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge used to enter it, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, via, i) = stack[top];
            if i < g.neighbors(v).len() {
                stack[top].2 += 1;
                let (w, e) = g.neighbors(v)[i];
                if e == via || w == v {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == via {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A block as a standalone graph on its own vertices.
pub fn block_graph(g: &Multigraph, block: &[usize]) -> Multigraph {
    let verts: BTreeSet<usize> = block.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
    let index = |v: usize| verts.iter().position(|&w| w == v).unwrap();
    let edges = block.iter().map(|&e| (index(g.edge(e).0), index(g.edge(e).1))).collect();
    Multigraph::from_edges(verts.len(), edges).expect("block edges are in range")
}

fn is_cactus_by_blocks(g: &Multigraph) -> bool {
    blocks(g).iter().all(|b| {
        let vs: BTreeSet<usize> = b.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
        b.len() == 1 || b.len() == vs.len()
    })
}

fn has_second_path(g: &Multigraph, u: usize, v: usize) -> bool {
    let dist = g.distances_from(&[v]);
    if dist[u] == crate::graph::UNREACHABLE {
        return false;
    }
    // walk a shortest u-v path, then try removing each of its edges
    let mut path_edges = Vec::new();
    let mut cur = u;
    while cur != v {
        let &(w, e) = g
            .neighbors(cur)
            .iter()
            .find(|&&(w, _)| dist[w] + 1 == dist[cur])
            .expect("shortest path step");
        path_edges.push(e);
        cur = w;
    }
    path_edges.into_iter().any(|skip| connected_without(g, u, v, skip))
}

fn connected_without(g: &Multigraph, u: usize, v: usize, skip: usize) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        if x == v {
            return true;
        }
        for &(w, e) in g.neighbors(x) {
            if e != skip && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Up to `samples` vertex pairs spread evenly over all pairs.
fn sampled_pairs(n: usize, samples: usize) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if all.len() <= samples {
        return all;
    }
    (0..samples).map(|i| all[i * all.len() / samples]).collect()
}

fn minor_free(search: Search<crate::bottleneck::Ladder>) -> Option<bool> {
    match search {
        Search::Found(_) => Some(false),
        Search::None => Some(true),
        Search::Unknown { .. } => None,
    }
}

/// Whether some block has a `D_k` minor (`k ≥ 2`). A `D_k` minor is
/// 2-connected, so it lives inside a single block.
fn has_dipole_minor(g: &Multigraph, k: usize, budget: &Budget) -> Result<Option<bool>> {
    let mut unknown = false;
    for b in blocks(g) {
        if b.len() < k {
            // a block with fewer than k edges cannot hold k rungs
            continue;
        }
        let bg = block_graph(g, &b);
        match minor_free(find_dipole_ladder(&bg, k, budget)?) {
            Some(false) => return Ok(Some(true)),
            Some(true) => {}
            None => unknown = true,
        }
    }
    Ok(if unknown { None } else { Some(false) })
}

/// Edge bottleneck number as the largest over blocks (1 for trees).
fn bottleneck_by_blocks(g: &Multigraph, budget: &Budget) -> Result<Option<usize>> {
    let mut best = 1;
    for b in blocks(g) {
        if b.len() == 1 {
            continue;
        }
        let bg = block_graph(g, &b);
        match edge_bottleneck_exact(&bg, budget) {
            Ok((k, _, _)) => best = best.max(k),
            Err(Error::BudgetExceeded { .. }) | Err(Error::TooLarge { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(best))
}

/// Classifies a connected graph as a tree, cactus, cut-cactus or general graph.
pub fn classify_graph(g: &Multigraph, budget: &Budget) -> Result<ClassReport> {
    g.ensure_loopless()?;
    g.ensure_connected()?;
    let n = g.vertex_count();
    let no_cycles = g.edge_count() + 1 == n;
    let unique_path = sampled_pairs(n, 20).into_iter().all(|(u, v)| !has_second_path(g, u, v));
    let cactus_blocks = is_cactus_by_blocks(g);
    let no_d3_minor = has_dipole_minor(g, 3, budget)?.map(|b| !b);
    let no_d4_minor = has_dipole_minor(g, 4, budget)?.map(|b| !b);
    let cycle_intersection = if n <= 12 {
        match cycle_intersection_oracle(g, DEFAULT_CYCLE_CAP) {
            Ok(r) => Some(r.worst),
            Err(Error::OracleUnavailable { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let edge_bottleneck = if n < 2 { Some(0) } else { bottleneck_by_blocks(g, budget)? };

    let label = if no_cycles {
        ClassLabel::Tree
    } else if cactus_blocks {
        ClassLabel::Cactus
    } else {
        let cut_cactus = match (no_d4_minor, cycle_intersection, edge_bottleneck) {
            (Some(free), _, _) => free,
            (None, Some(kind), _) => kind <= IntersectionKind::ConnectedMultiVertex,
            (None, None, Some(b)) => b <= 3,
            (None, None, None) => {
                return Err(Error::BudgetExceeded {
                    lower: 3,
                    upper: crate::bottleneck::ladder_width_bound(g),
                    pairs_examined: budget.max_pairs,
                })
            }
        };
        if cut_cactus {
            ClassLabel::CutCactus
        } else {
            ClassLabel::General
        }
    };
    // the hierarchy pins the value down when the exact scan is out of budget
    let edge_bottleneck = edge_bottleneck.or(match label {
        ClassLabel::Tree => Some(1),
        ClassLabel::Cactus => Some(2),
        ClassLabel::CutCactus if no_d3_minor == Some(false) => Some(3),
        ClassLabel::CutCactus if no_d3_minor == Some(true) => Some(2),
        _ => None,
    });
    Ok(ClassReport {
        label,
        edge_bottleneck,
        evidence: Evidence {
            no_cycles,
            unique_path,
            cactus_blocks,
            no_d3_minor,
            no_d4_minor,
            cycle_intersection,
        },
    })
}

/// All cycles of `g` (including 2-cycles from parallel edges), each once.
pub fn enumerate_cycles(g: &Multigraph, cap: usize) -> Result<Vec<Cycle>> {
    g.ensure_loopless()?;
    let n = g.vertex_count();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        // cycles whose smallest vertex is s
        let mut verts = vec![s];
        let mut edges: Vec<usize> = Vec::new();
        let mut iters = vec![0usize];
        on_path[s] = true;
        while let Some(top) = iters.len().checked_sub(1) {
            let v = verts[top];
            if iters[top] >= g.neighbors(v).len() {
                on_path[v] = false;
                verts.pop();
                iters.pop();
                edges.pop();
                continue;
            }
            let (w, e) = g.neighbors(v)[iters[top]];
            iters[top] += 1;
            if w < s || edges.last() == Some(&e) {
                continue;
            }
            if w == s && !edges.is_empty() {
                let mut key = edges.clone();
                key.push(e);
                key.sort_unstable();
                if found.insert(key.clone()) {
                    if found.len() > cap {
                        return Err(Error::OracleUnavailable { cap });
                    }
                    out.push(Cycle {
                        vertices: verts.clone(),
                        edges: key,
                    });
                }
            } else if !on_path[w] {
                on_path[w] = true;
                verts.push(w);
                edges.push(e);
                iters.push(0);
            }
        }
    }
    Ok(out)
}

/// How two cycles meet, as subgraphs (shared vertices and shared edges).
pub fn intersection_kind(g: &Multigraph, a: &Cycle, b: &Cycle) -> IntersectionKind {
    let va: BTreeSet<usize> = a.vertices.iter().copied().collect();
    let common: Vec<usize> = b.vertices.iter().copied().filter(|v| va.contains(v)).collect();
    match common.len() {
        0 => return IntersectionKind::Empty,
        1 => return IntersectionKind::SingleVertex,
        _ => {}
    }
    let shared_edges: Vec<usize> = a.edges.iter().copied().filter(|e| b.edges.binary_search(e).is_ok()).collect();
    // union-find over the shared vertices
    let mut parent: Vec<usize> = (0..common.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let pos = |v: usize| common.iter().position(|&c| c == v).unwrap();
    let mut parts = common.len();
    for e in shared_edges {
        let (x, y) = g.edge(e);
        let (rx, ry) = (find(&mut parent, pos(x)), find(&mut parent, pos(y)));
        if rx != ry {
            parent[rx] = ry;
            parts -= 1;
        }
    }
    if parts == 1 {
        IntersectionKind::ConnectedMultiVertex
    } else {
        IntersectionKind::Disconnected
    }
}

/// Worst intersection over all pairs of distinct cycles.
pub fn cycle_intersection_oracle(g: &Multigraph, cap: usize) -> Result<IntersectionReport> {
    let cycles = enumerate_cycles(g, cap)?;
    let mut worst = IntersectionKind::Empty;
    let mut pair = None;
    'scan: for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let k = intersection_kind(g, &cycles[i], &cycles[j]);
            if pair.is_none() || k > worst {
                worst = k;
                pair = Some((i, j));
                if k == IntersectionKind::Disconnected {
                    break 'scan;
                }
            }
        }
    }
    Ok(IntersectionReport {
        cycle_count: cycles.len(),
        worst,
        pair: pair.map(|(i, j)| (cycles[i].clone(), cycles[j].clone())),
    })
}

/// A cycle as a closed walk witness, starting and ending at its first vertex.
pub fn cycle_walk(g: &Multigraph, c: &Cycle) -> PathWitness {
    let mut vertices = c.vertices.clone();
    vertices.push(c.vertices[0]);
    let mut edges = Vec::with_capacity(c.edges.len());
    let mut unused: Vec<usize> = c.edges.clone();
    for w in vertices.windows(2) {
        let i = unused
            .iter()
            .position(|&e| {
                let (a, b) = g.edge(e);
                (a, b) == (w[0], w[1]) || (b, a) == (w[0], w[1])
            })
            .expect("cycle edges follow its vertices");
        edges.push(unused.remove(i));
    }
    PathWitness { vertices, edges }
}

/// Vertex set of a cycle.
pub fn cycle_vertices(c: &Cycle) -> VertexSet {
    VertexSet::new(c.vertices.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn block_structure() {
        assert_eq!(blocks(&bowtie()).len(), 2);
        assert_eq!(blocks(&path(4)).len(), 3);
        assert_eq!(blocks(&domino()).len(), 1);
        assert_eq!(blocks(&dipole(3)), vec![vec![0, 1, 2]]);
        assert!(is_cactus_by_blocks(&bowtie()));
        assert!(!is_cactus_by_blocks(&domino()));
        assert!(is_cactus_by_blocks(&dipole(2)));
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(enumerate_cycles(&domino(), 100).unwrap().len(), 3);
        assert_eq!(enumerate_cycles(&complete(4), 100).unwrap().len(), 7);
        assert_eq!(enumerate_cycles(&dipole(3), 100).unwrap().len(), 3);
        assert!(matches!(enumerate_cycles(&complete(7), 10), Err(Error::OracleUnavailable { .. })));
    }

    #[test]
    fn oracle_examples() {
        let worst = |g: &Multigraph| cycle_intersection_oracle(g, 1000).unwrap().worst;
        assert_eq!(worst(&bowtie()), IntersectionKind::SingleVertex);
        assert_eq!(worst(&domino()), IntersectionKind::ConnectedMultiVertex);
        assert_eq!(worst(&complete(4)), IntersectionKind::Disconnected);
        assert_eq!(worst(&path(4)), IntersectionKind::Empty);
    }

    #[test]
    fn labels() {
        let b = Budget::default();
        let r = classify_graph(&bowtie(), &b).unwrap();
        assert_eq!((r.label, r.edge_bottleneck), (ClassLabel::Cactus, Some(2)));
        let r = classify_graph(&domino(), &b).unwrap();
        assert_eq!((r.label, r.edge_bottleneck), (ClassLabel::CutCactus, Some(3)));
        let r = classify_graph(&complete(4), &b).unwrap();
        assert_eq!((r.label, r.edge_bottleneck), (ClassLabel::General, Some(4)));
        let r = classify_graph(&path(5), &b).unwrap();
        assert_eq!((r.label, r.edge_bottleneck), (ClassLabel::Tree, Some(1)));
        assert!(r.evidence.unique_path);
    }

    #[test]
    fn closed_walks() {
        let g = domino();
        for c in enumerate_cycles(&g, 100).unwrap() {
            let w = cycle_walk(&g, &c);
            assert_eq!(w.first(), w.last());
            assert_eq!(w.edges.len(), c.edges.len());
        }
    }
}
