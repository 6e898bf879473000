//! Edge and point bottleneck numbers with ladder and cut witnesses.
//!
//! A graph is `n`-edge bottlenecked when any two disjoint connected vertex
//! sets can be separated by `n` edges. By Menger's theorem the smallest such
//! `n` is the largest number of edge-disjoint paths between two disjoint
//! connected sets, and it equals the widest ladder (`D_n` minor) in the graph.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{
    self, edge_flow_count, max_edge_disjoint, max_vertex_disjoint, sides, vertex_flow_count, CutCertificate, Side,
};
use crate::graph::{Multigraph, PathWitness, VertexSet, UNREACHABLE};
use crate::subsets::{bits, connected_subsets, set_of, MaskGraph, MAX_MASK_VERTICES};

/// Work limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest graph the pair scans will enumerate.
    pub max_vertices: usize,
    /// Number of (X, Y) pole pairs (or separators) that may be examined.
    pub max_pairs: u64,
    /// Number of connected vertex sets that may be materialized.
    pub max_subsets: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 10,
            max_pairs: 50_000_000,
            max_subsets: 1 << 20,
        }
    }
}

impl Budget {
    pub fn with_pairs(max_pairs: u64) -> Self {
        Budget {
            max_pairs,
            ..Budget::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    LowerBound,
    UpperBound,
}

/// Outcome of a search that may run out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "witness")]
pub enum Search<T> {
    Found(T),
    None,
    Unknown { pairs_examined: u64 },
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Search::None)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Search::Unknown { .. })
    }
}

/// Two disjoint connected poles joined by rungs that are pairwise disjoint
/// outside the poles. With `fatness = Some(M)` the poles and the rung
/// interiors are also pairwise at distance at least `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pub pole_x: VertexSet,
    pub pole_y: VertexSet,
    pub rungs: Vec<PathWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fatness: Option<usize>,
}

impl Ladder {
    pub fn width(&self) -> usize {
        self.rungs.len()
    }

    /// Structural checks plus, when `fatness` is set, the distance checks.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        for (pole, name) in [(&self.pole_x, "pole X"), (&self.pole_y, "pole Y")] {
            if pole.is_empty() {
                return Err(Error::invalid(format!("{name} is empty")));
            }
            pole.validate(g)?;
            if !g.induces_connected(pole) {
                return Err(Error::invalid(format!("{name} is not connected")));
            }
        }
        if !self.pole_x.is_disjoint(&self.pole_y) {
            return Err(Error::invalid("poles intersect"));
        }
        let mut used_vertex = vec![false; g.vertex_count()];
        let mut used_edge = vec![false; g.edge_count()];
        for (i, rung) in self.rungs.iter().enumerate() {
            rung.validate(g)?;
            if !self.pole_x.contains(rung.first()) || !self.pole_y.contains(rung.last()) {
                return Err(Error::invalid(format!("rung {i} does not run from pole X to pole Y")));
            }
            for &v in rung.interior() {
                if self.pole_x.contains(v) || self.pole_y.contains(v) {
                    return Err(Error::invalid(format!("rung {i} passes through a pole at {v}")));
                }
                if core::mem::replace(&mut used_vertex[v], true) {
                    return Err(Error::invalid(format!("rung {i} shares vertex {v} with another rung")));
                }
            }
            for &e in &rung.edges {
                if core::mem::replace(&mut used_edge[e], true) {
                    return Err(Error::invalid(format!("rung {i} shares edge {e} with another rung")));
                }
            }
        }
        if let Some(m) = self.fatness {
            let check = crate::coarse::verify_fat_ladder(g, self, m)?;
            if let Some(v) = check.violation {
                return Err(Error::invalid(format!("ladder is not {m}-fat: {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottleneckReport {
    pub edge_bottleneck: Option<usize>,
    pub point_bottleneck: Option<usize>,
    pub ladder: Option<Ladder>,
    pub cut: Option<CutCertificate>,
    /// The (X, Y) pair the cut separates.
    pub cut_pair: Option<(VertexSet, VertexSet)>,
    /// Largest path count among pairs joined by an edge (point bottlenecking only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjacent_pair_paths: Option<usize>,
    pub method: Method,
    pub lower: usize,
    pub upper: usize,
    pub pairs_examined: u64,
}

/// Upper bound on any ladder width: spanning trees of both poles plus the
/// rungs' last edges fit in `|E|`, so width ≤ cycle rank + 1.
pub(crate) fn ladder_width_bound(g: &Multigraph) -> usize {
    g.cycle_rank() + 1
}

fn boundary_edges(g: &Multigraph, set: u64) -> usize {
    g.edges()
        .iter()
        .filter(|&&(a, b)| ((set >> a) & 1) != ((set >> b) & 1))
        .count()
}

fn side_vec(n: usize, x: u64, y: u64) -> Vec<Side> {
    (0..n)
        .map(|v| {
            if (x >> v) & 1 == 1 {
                Side::Source
            } else if (y >> v) & 1 == 1 {
                Side::Sink
            } else {
                Side::Free
            }
        })
        .collect()
}

fn analysis_checks(g: &Multigraph) -> Result<()> {
    g.ensure_loopless()?;
    if g.vertex_count() < 2 {
        return Err(Error::invalid("bottleneck numbers need at least two vertices"));
    }
    g.ensure_connected()
}

struct PairScan {
    subsets: Vec<u64>,
    boundary: Vec<usize>,
}

impl PairScan {
    fn new(g: &Multigraph, mg: &MaskGraph, budget: &Budget) -> Option<Self> {
        let subsets = connected_subsets(mg, budget.max_subsets)?;
        let boundary = subsets.iter().map(|&s| boundary_edges(g, s)).collect();
        Some(PairScan { subsets, boundary })
    }
}

/// Exact edge bottleneck number by scanning every pair of disjoint
/// connected vertex sets. The ladder witness has exactly that many rungs.
pub fn edge_bottleneck_exact(g: &Multigraph, budget: &Budget) -> Result<(usize, Ladder, BottleneckReport)> {
    analysis_checks(g)?;
    let n = g.vertex_count();
    let upper = ladder_width_bound(g);
    let too_big = || -> Result<Error> {
        let lower = flow::connectivity_profile(g, false)?.lambda_max;
        Ok(Error::BudgetExceeded {
            lower,
            upper,
            pairs_examined: 0,
        })
    };
    if n > budget.max_vertices || n > MAX_MASK_VERTICES {
        return Err(too_big()?);
    }
    let mg = MaskGraph::new(g)?;
    let Some(scan) = PairScan::new(g, &mg, budget) else {
        return Err(too_big()?);
    };
    let mut best = 0usize;
    let mut best_pair = (0u64, 0u64);
    let mut pairs = 0u64;
    'outer: for (i, &x) in scan.subsets.iter().enumerate() {
        if scan.boundary[i] <= best {
            continue;
        }
        for (j, &y) in scan.subsets.iter().enumerate().skip(i + 1) {
            if x & y != 0 {
                continue;
            }
            pairs += 1;
            if pairs > budget.max_pairs {
                return Err(Error::BudgetExceeded {
                    lower: best.max(flow::connectivity_profile(g, false)?.lambda_max),
                    upper,
                    pairs_examined: pairs - 1,
                });
            }
            let cap = scan.boundary[i].min(scan.boundary[j]);
            if cap <= best {
                continue;
            }
            let f = edge_flow_count(g, &side_vec(n, x, y), cap);
            if f > best {
                best = f;
                best_pair = (x, y);
                if best == upper {
                    break 'outer;
                }
            }
        }
    }
    let (px, py) = (set_of(best_pair.0), set_of(best_pair.1));
    let certificate = max_edge_disjoint(g, &px, &py)?;
    debug_assert_eq!(certificate.count, best);
    let ladder = match find_dipole_ladder(g, best, budget)? {
        Search::Found(l) => l,
        other => {
            return Err(Error::WitnessMismatch(format!(
                "edge bottleneck {best} but no {best}-ladder was found ({other:?})"
            )))
        }
    };
    let report = BottleneckReport {
        edge_bottleneck: Some(best),
        point_bottleneck: None,
        ladder: Some(ladder.clone()),
        cut: Some(certificate.cut),
        cut_pair: Some((px, py)),
        adjacent_pair_paths: None,
        method: Method::Exact,
        lower: best,
        upper: best,
        pairs_examined: pairs,
    };
    Ok((best, ladder, report))
}

/// Components of `g` minus `removed`, as masks.
fn mask_components(mg: &MaskGraph, removed: u64) -> Vec<u64> {
    let mut left = mg.all() & !removed;
    let mut out = Vec::new();
    while left != 0 {
        let c = mg.reach(left & left.wrapping_neg(), left);
        out.push(c);
        left &= !c;
    }
    out
}

/// Exact point bottleneck number.
///
/// For pairs not joined by an edge the minimum separator is a minimal
/// separator `Z` of the graph whose two full components contain X and Y,
/// and conversely every minimal separator is realized by its two full
/// components. So the value is the size of the largest minimal separator,
/// found with the close-neighborhood generation scheme of Berry, Bordat
/// and Cogis. Pairs joined by an edge are reported separately.
pub fn point_bottleneck_exact(g: &Multigraph, budget: &Budget) -> Result<(usize, BottleneckReport)> {
    analysis_checks(g)?;
    let mg = MaskGraph::new(g)?;
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut queue: VecDeque<u64> = VecDeque::new();
    let push = |s: u64, seen: &mut BTreeSet<u64>, queue: &mut VecDeque<u64>| {
        if s != 0 && seen.insert(s) {
            queue.push_back(s);
        }
    };
    for v in 0..mg.n {
        let closed = mg.adj[v] | (1 << v);
        for c in mask_components(&mg, closed) {
            push(mg.boundary(c), &mut seen, &mut queue);
        }
    }
    let mut processed = 0u64;
    while let Some(s) = queue.pop_front() {
        processed += 1;
        if processed > budget.max_pairs {
            let lower = seen.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
            return Err(Error::BudgetExceeded {
                lower,
                upper: mg.n - 2,
                pairs_examined: processed - 1,
            });
        }
        for x in bits(s) {
            for c in mask_components(&mg, s | mg.adj[x]) {
                push(mg.boundary(c), &mut seen, &mut queue);
            }
        }
    }
    // largest separator, smallest mask on ties
    let best = seen
        .iter()
        .copied()
        .fold(None::<u64>, |acc, s| match acc {
            Some(a) if a.count_ones() >= s.count_ones() => Some(a),
            _ => Some(s),
        });
    let (value, cut, cut_pair) = match best {
        None => (0, None, None),
        Some(s) => {
            let full: Vec<u64> = mask_components(&mg, s)
                .into_iter()
                .filter(|&c| mg.boundary(c) == s)
                .collect();
            let (x, y) = (set_of(full[0]), set_of(full[1]));
            let r = max_vertex_disjoint(g, &x, &y)?;
            if r.count != s.count_ones() as usize {
                return Err(Error::WitnessMismatch(format!(
                    "separator of size {} but {} disjoint paths",
                    s.count_ones(),
                    r.count
                )));
            }
            (r.count, r.cut, Some((x, y)))
        }
    };
    let adjacent_pair_paths = if g.vertex_count() <= budget.max_vertices {
        adjacent_pair_max(g, &mg, budget)
    } else {
        None
    };
    let report = BottleneckReport {
        edge_bottleneck: None,
        point_bottleneck: Some(value),
        ladder: None,
        cut,
        cut_pair,
        adjacent_pair_paths,
        method: Method::Exact,
        lower: value,
        upper: value,
        pairs_examined: processed,
    };
    Ok((value, report))
}

fn adjacent_pair_max(g: &Multigraph, mg: &MaskGraph, budget: &Budget) -> Option<usize> {
    let scan = PairScan::new(g, mg, budget)?;
    let mut best = 0;
    for (i, &x) in scan.subsets.iter().enumerate() {
        let near = mg.boundary(x);
        for (j, &y) in scan.subsets.iter().enumerate().skip(i + 1) {
            if x & y != 0 || near & y == 0 {
                continue;
            }
            let cap = scan.boundary[i].min(scan.boundary[j]);
            if cap > best {
                best = best.max(vertex_flow_count(g, &side_vec(mg.n, x, y), cap));
            }
        }
    }
    Some(best)
}

fn ladder_from_pair(g: &Multigraph, x: VertexSet, y: VertexSet, k: usize) -> Result<Option<Ladder>> {
    let r = max_vertex_disjoint(g, &x, &y)?;
    if r.count < k {
        return Ok(None);
    }
    let mut rungs = r.paths.paths;
    rungs.truncate(k);
    Ok(Some(Ladder {
        pole_x: x,
        pole_y: y,
        rungs,
        fatness: None,
    }))
}

/// Searches for a ladder with `k` internally vertex-disjoint rungs, which
/// exists exactly when the graph has a `D_k` minor.
///
/// Vertex pairs are tried first, ordered by local edge connectivity and
/// then distance; the best seed is grown greedily; the exhaustive scan over
/// all pairs of connected sets settles the rest within budget.
pub fn find_dipole_ladder(g: &Multigraph, k: usize, budget: &Budget) -> Result<Search<Ladder>> {
    analysis_checks(g)?;
    if k == 0 {
        return Err(Error::invalid("ladder width must be at least 1"));
    }
    if k > ladder_width_bound(g) {
        return Ok(Search::None);
    }
    let n = g.vertex_count();

    // seeds: single-vertex poles
    let mut seeds = Vec::new();
    for u in 0..n {
        let dist = g.distances_from(&[u]);
        for v in u + 1..n {
            if g.degree(u).min(g.degree(v)) >= k {
                seeds.push((flow::local_edge_connectivity(g, u, v), dist[v], u, v));
            }
        }
    }
    seeds.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then((a.2, a.3).cmp(&(b.2, b.3))));
    let mut best_seed: Option<(usize, u64, u64)> = None;
    for &(lambda, _, u, v) in &seeds {
        if lambda < k && best_seed.is_some() {
            break;
        }
        let side = sides(n, &VertexSet::singleton(u), &VertexSet::singleton(v));
        let f = vertex_flow_count(g, &side, k);
        if f >= k {
            return ladder_from_pair(g, VertexSet::singleton(u), VertexSet::singleton(v), k)
                .map(|l| Search::Found(l.expect("flow already reached k")));
        }
        if best_seed.map_or(true, |(b, _, _)| f > b) && n <= MAX_MASK_VERTICES {
            best_seed = Some((f, 1 << u, 1 << v));
        }
    }

    let mg = if n <= MAX_MASK_VERTICES { Some(MaskGraph::new(g)?) } else { None };
    if let (Some(mg), Some((mut f, mut x, mut y))) = (mg.as_ref(), best_seed) {
        // greedy growth: absorb a neighboring vertex while the flow improves
        loop {
            let mut improved = false;
            for grow_x in [true, false] {
                let (from, other) = if grow_x { (x, y) } else { (y, x) };
                for w in bits(mg.boundary(from) & !other) {
                    let (nx, ny) = if grow_x { (x | 1 << w, y) } else { (x, y | 1 << w) };
                    let nf = vertex_flow_count(g, &side_vec(n, nx, ny), k);
                    if nf > f {
                        (f, x, y, improved) = (nf, nx, ny, true);
                        break;
                    }
                }
                if improved {
                    break;
                }
            }
            if f >= k {
                return ladder_from_pair(g, set_of(x), set_of(y), k)
                    .map(|l| Search::Found(l.expect("flow already reached k")));
            }
            if !improved {
                break;
            }
        }
    }

    let Some(mg) = mg.filter(|_| n <= budget.max_vertices) else {
        return Ok(Search::Unknown { pairs_examined: 0 });
    };
    let Some(scan) = PairScan::new(g, &mg, budget) else {
        return Ok(Search::Unknown { pairs_examined: 0 });
    };
    let mut pairs = 0u64;
    for (i, &x) in scan.subsets.iter().enumerate() {
        if scan.boundary[i] < k {
            continue;
        }
        for (j, &y) in scan.subsets.iter().enumerate().skip(i + 1) {
            if x & y != 0 || scan.boundary[j] < k {
                continue;
            }
            pairs += 1;
            if pairs > budget.max_pairs {
                return Ok(Search::Unknown { pairs_examined: pairs - 1 });
            }
            if vertex_flow_count(g, &side_vec(n, x, y), k) >= k {
                return ladder_from_pair(g, set_of(x), set_of(y), k)
                    .map(|l| Search::Found(l.expect("flow already reached k")));
            }
        }
    }
    Ok(Search::None)
}

/// A subdivision of `D_3`: two branch vertices and three internally
/// disjoint paths between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theta {
    pub branch_u: usize,
    pub branch_v: usize,
    pub paths: Vec<PathWitness>,
}

impl Theta {
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.paths.len() != 3 || self.branch_u == self.branch_v {
            return Err(Error::invalid("a theta needs two branch vertices and three paths"));
        }
        let system = flow::PathSystem {
            paths: self.paths.clone(),
            mode: flow::DisjointMode::InternallyVertexDisjoint,
            sources: VertexSet::singleton(self.branch_u),
            sinks: VertexSet::singleton(self.branch_v),
        };
        system.verify(g)
    }
}

/// Shortest path from any vertex of `from` to `to`, staying inside `within`.
fn path_within(g: &Multigraph, from: &[usize], to: usize, within: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut parent = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in from {
        parent[s] = s;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &(w, _) in g.neighbors(v) {
            if parent[w] == UNREACHABLE && within(w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Joins `branch` (a vertex walk) to an existing witness that starts at the
/// branch's last vertex.
fn prepend(g: &Multigraph, branch: &[usize], rest: &PathWitness) -> Result<PathWitness> {
    let head = PathWitness::along(g, branch.to_vec())?;
    let mut vertices = head.vertices;
    vertices.extend_from_slice(&rest.vertices[1..]);
    let mut edges = head.edges;
    edges.extend_from_slice(&rest.edges);
    Ok(PathWitness { vertices, edges })
}

/// Three internally disjoint paths inside a connected `pole` from one
/// center to each of the terminals.
fn tripod(g: &Multigraph, pole: &VertexSet, t: [usize; 3]) -> (usize, [Vec<usize>; 3]) {
    let inside = |v: usize| pole.contains(v);
    let p01 = path_within(g, &[t[0]], t[1], &inside).expect("pole is connected");
    let q = path_within(g, &p01, t[2], &inside).expect("pole is connected");
    let center = q[0];
    let at = p01.iter().position(|&v| v == center).unwrap();
    let mut b0: Vec<usize> = p01[..=at].to_vec();
    b0.reverse();
    let b1 = p01[at..].to_vec();
    (center, [b0, b1, q])
}

/// Finds a subdivision of `D_3` whenever the graph has a `D_3` minor.
///
/// A 3-ladder is found first; inside each pole the three rung endpoints
/// are joined to a common center, and the centers become the branch vertices.
pub fn find_theta_subdivision(g: &Multigraph) -> Result<Option<Theta>> {
    let budget = Budget {
        max_vertices: MAX_MASK_VERTICES,
        ..Budget::default()
    };
    let ladder = match find_dipole_ladder(g, 3, &budget)? {
        Search::Found(l) => l,
        Search::None => return Ok(None),
        Search::Unknown { pairs_examined } => {
            return Err(Error::BudgetExceeded {
                lower: 0,
                upper: ladder_width_bound(g),
                pairs_examined,
            })
        }
    };
    let ends_x = [0, 1, 2].map(|i| ladder.rungs[i].first());
    let ends_y = [0, 1, 2].map(|i| ladder.rungs[i].last());
    let (cx, bx) = tripod(g, &ladder.pole_x, ends_x);
    let (cy, by) = tripod(g, &ladder.pole_y, ends_y);
    let mut paths = Vec::with_capacity(3);
    for i in 0..3 {
        let with_x = prepend(g, &bx[i], &ladder.rungs[i])?;
        let mut tail = by[i].clone();
        tail.reverse();
        let tail = PathWitness::along(g, tail)?;
        let mut path = with_x;
        path.vertices.extend_from_slice(&tail.vertices[1..]);
        path.edges.extend_from_slice(&tail.edges);
        paths.push(path);
    }
    let theta = Theta {
        branch_u: cx,
        branch_v: cy,
        paths,
    };
    theta.validate(g)?;
    Ok(Some(theta))
}

/// Tree inside `pole` spanning the terminals, as a parent map rooted at `terminals[0]`.
fn steiner_tree(g: &Multigraph, pole: &VertexSet, terminals: &[usize]) -> BTreeSet<usize> {
    let inside = |v: usize| pole.contains(v);
    let mut tree: BTreeSet<usize> = BTreeSet::new();
    tree.insert(terminals[0]);
    for &t in &terminals[1..] {
        let from: Vec<usize> = tree.iter().copied().collect();
        let p = path_within(g, &from, t, &inside).expect("pole is connected");
        tree.extend(p);
    }
    tree
}

/// Reshapes one pole: returns the new pole path and, per terminal, the walk
/// from the pole-path end it hangs off to that terminal.
fn normalize_pole(g: &Multigraph, pole: &VertexSet, t: [usize; 4]) -> Result<(Vec<usize>, [Vec<usize>; 4])> {
    // tree paths between terminals may use chords of the tree; restrict the
    // searches to a BFS tree of the Steiner subgraph so paths are unique
    let steiner = steiner_tree(g, pole, &t);
    let tree = bfs_tree(g, &steiner, t[0]);
    let tpath = |a: &[usize], b: usize| tree_path_in(&tree, a, b);
    for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        let pab = tpath(&[t[a]], t[b]);
        let pcd = tpath(&[t[c]], t[d]);
        if pab.iter().any(|v| pcd.contains(v)) {
            continue;
        }
        // spine runs from u on P_ab to the nearest vertex of P_cd
        let spine = {
            let mut best: Option<Vec<usize>> = None;
            for &w in &pcd {
                let s = tpath(&pab, w);
                if best.as_ref().map_or(true, |b| s.len() < b.len()) {
                    best = Some(s);
                }
            }
            best.unwrap()
        };
        let (u, v) = (spine[0], *spine.last().unwrap());
        let mut branches: [Vec<usize>; 4] = Default::default();
        for (i, end) in [(a, u), (b, u), (c, v), (d, v)] {
            branches[i] = tpath(&[end], t[i]);
        }
        return finish_pole(g, pole, u, v, branches);
    }
    // all pairings cross: find a center with four internally disjoint branches
    for &w in tree.keys() {
        let branches: [Vec<usize>; 4] = [0, 1, 2, 3].map(|i| tpath(&[w], t[i]));
        let mut used = BTreeSet::new();
        let disjoint = branches
            .iter()
            .all(|b| b[1..].iter().all(|&x| used.insert(x)));
        if disjoint {
            return finish_pole(g, pole, w, w, branches);
        }
    }
    Err(Error::invalid("pole does not admit a normalized form"))
}

fn finish_pole(
    g: &Multigraph,
    pole: &VertexSet,
    u: usize,
    v: usize,
    branches: [Vec<usize>; 4],
) -> Result<(Vec<usize>, [Vec<usize>; 4])> {
    let blocked: BTreeSet<usize> = branches.iter().flat_map(|b| b[1..].iter().copied()).collect();
    let path = path_within(g, &[u], v, &|x| pole.contains(x) && !blocked.contains(&x))
        .ok_or_else(|| Error::invalid("pole path is blocked by rung branches"))?;
    Ok((path, branches))
}

/// BFS tree of the subgraph induced on `within`, as parent links.
fn bfs_tree(g: &Multigraph, within: &BTreeSet<usize>, root: usize) -> alloc::collections::BTreeMap<usize, usize> {
    let mut parent = alloc::collections::BTreeMap::new();
    parent.insert(root, root);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(w, _) in g.neighbors(x) {
            if within.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Unique path in a parent-link tree from the nearest vertex of `from` to `to`.
fn tree_path_in(tree: &alloc::collections::BTreeMap<usize, usize>, from: &[usize], to: usize) -> Vec<usize> {
    let root_path = |mut x: usize| {
        let mut p = vec![x];
        while tree[&x] != x {
            x = tree[&x];
            p.push(x);
        }
        p
    };
    let up_to = root_path(to);
    let mut best: Option<Vec<usize>> = None;
    for &f in from {
        let up_from = root_path(f);
        // lowest common ancestor
        let lca = *up_from.iter().find(|x| up_to.contains(x)).unwrap();
        let mut p: Vec<usize> = up_from.iter().copied().take_while(|&x| x != lca).collect();
        p.push(lca);
        let mut down: Vec<usize> = up_to.iter().copied().take_while(|&x| x != lca).collect();
        down.reverse();
        p.extend(down);
        if best.as_ref().map_or(true, |b| p.len() < b.len()) {
            best = Some(p);
        }
    }
    // trim so the path starts at its last vertex belonging to `from`
    let mut p = best.unwrap();
    if let Some(cut) = p.iter().rposition(|x| from.contains(x)) {
        p.drain(..cut);
    }
    p
}

/// Rebuilds a 4-ladder so each pole induces a path and two rungs leave from
/// each end of that path.
pub fn normalize_four_ladder(g: &Multigraph, ladder: &Ladder) -> Result<Ladder> {
    g.ensure_loopless()?;
    if ladder.width() != 4 {
        return Err(Error::invalid(format!("expected a 4-ladder, got width {}", ladder.width())));
    }
    ladder.validate(g)?;
    let tx = [0, 1, 2, 3].map(|i| ladder.rungs[i].first());
    let ty = [0, 1, 2, 3].map(|i| ladder.rungs[i].last());
    let (px, bx) = normalize_pole(g, &ladder.pole_x, tx)?;
    let (py, by) = normalize_pole(g, &ladder.pole_y, ty)?;
    let mut rungs = Vec::with_capacity(4);
    for i in 0..4 {
        let mut r = prepend(g, &bx[i], &ladder.rungs[i])?;
        let mut tail = by[i].clone();
        tail.reverse();
        let tail = PathWitness::along(g, tail)?;
        r.vertices.extend_from_slice(&tail.vertices[1..]);
        r.edges.extend_from_slice(&tail.edges);
        rungs.push(r);
    }
    let out = Ladder {
        pole_x: VertexSet::new(px.iter().copied()),
        pole_y: VertexSet::new(py.iter().copied()),
        rungs,
        fatness: None,
    };
    out.validate(g)?;
    if !is_normal_four_ladder(g, &out) {
        return Err(Error::WitnessMismatch("normalization produced a non-normal ladder".into()));
    }
    Ok(out)
}

/// Whether `pole` induces a path (ignoring edge multiplicity); returns its
/// end vertices.
pub fn pole_path_ends(g: &Multigraph, pole: &VertexSet) -> Option<(usize, usize)> {
    if !g.induces_connected(pole) {
        return None;
    }
    if pole.len() == 1 {
        let v = pole.members()[0];
        return Some((v, v));
    }
    let mut ends = Vec::new();
    let mut simple_edges = BTreeSet::new();
    for v in pole.iter() {
        let nbrs: BTreeSet<usize> = g
            .neighbors(v)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| pole.contains(w))
            .collect();
        match nbrs.len() {
            1 => ends.push(v),
            2 => {}
            _ => return None,
        }
        for w in nbrs {
            simple_edges.insert((v.min(w), v.max(w)));
        }
    }
    (ends.len() == 2 && simple_edges.len() == pole.len() - 1).then(|| (ends[0], ends[1]))
}

/// Poles induce paths and exactly two rungs leave each end of each pole path.
pub fn is_normal_four_ladder(g: &Multigraph, l: &Ladder) -> bool {
    if l.width() != 4 || l.validate(g).is_err() {
        return false;
    }
    let check = |pole: &VertexSet, ends: Vec<usize>| match pole_path_ends(g, pole) {
        Some((a, b)) if a == b => ends.iter().all(|&e| e == a),
        Some((a, b)) => {
            ends.iter().filter(|&&e| e == a).count() == 2 && ends.iter().filter(|&&e| e == b).count() == 2
        }
        None => false,
    };
    check(&l.pole_x, l.rungs.iter().map(|r| r.first()).collect())
        && check(&l.pole_y, l.rungs.iter().map(|r| r.last()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn trees_and_paths_are_one_bottlenecked() {
        let (b, ladder, report) = edge_bottleneck_exact(&path(6), &Budget::default()).unwrap();
        assert_eq!(b, 1);
        assert_eq!(ladder.width(), 1);
        assert_eq!(report.method, Method::Exact);
        assert_eq!(point_bottleneck_exact(&path(5), &Budget::default()).unwrap().0, 1);
    }

    #[test]
    fn budget_exceeded_carries_bounds() {
        let g = cycle(12);
        match edge_bottleneck_exact(&g, &Budget::default()) {
            Err(Error::BudgetExceeded { lower, upper, .. }) => assert_eq!((lower, upper), (2, 2)),
            other => panic!("{other:?}"),
        }
        let tiny = Budget { max_pairs: 3, ..Budget::default() };
        assert!(matches!(edge_bottleneck_exact(&complete(5), &tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn dipole_ladder_seeds() {
        let c6 = cycle(6);
        let l = find_dipole_ladder(&c6, 2, &Budget::default()).unwrap().found().unwrap();
        assert_eq!((l.pole_x.clone(), l.pole_y.clone()), (set(&[0]), set(&[3])));
        l.validate(&c6).unwrap();
        assert!(find_dipole_ladder(&path(7), 2, &Budget::default()).unwrap().is_none());
        let d = domino();
        let l = find_dipole_ladder(&d, 3, &Budget::default()).unwrap().found().unwrap();
        assert_eq!((l.pole_x.clone(), l.pole_y.clone()), (set(&[1]), set(&[4])));
    }

    #[test]
    fn theta_in_dipole_uses_parallel_edges() {
        let t = find_theta_subdivision(&dipole(3)).unwrap().unwrap();
        let mut edges: Vec<usize> = t.paths.iter().flat_map(|p| p.edges.clone()).collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![0, 1, 2]);
        assert!(find_theta_subdivision(&bowtie()).unwrap().is_none());
        let t = find_theta_subdivision(&domino()).unwrap().unwrap();
        assert_eq!((t.branch_u, t.branch_v), (1, 4));
    }

    #[test]
    fn ladder_validation_catches_shared_rungs() {
        let c6 = cycle(6);
        let rung = PathWitness::along(&c6, vec![0, 1, 2, 3]).unwrap();
        let l = Ladder {
            pole_x: set(&[0]),
            pole_y: set(&[3]),
            rungs: vec![rung.clone(), rung],
            fatness: None,
        };
        assert!(l.validate(&c6).is_err());
    }

    #[test]
    fn normalization_rejects_wrong_width() {
        let c6 = cycle(6);
        let l = find_dipole_ladder(&c6, 2, &Budget::default()).unwrap().found().unwrap();
        assert!(normalize_four_ladder(&c6, &l).is_err());
    }
}
