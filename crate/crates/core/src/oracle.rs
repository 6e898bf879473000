//! Brute-force reference implementations, independent of the flow code.
//!
//! Everything here enumerates paths or cut sets directly and is only
//! usable on very small graphs; it exists to cross-check the fast paths.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};

/// Largest edge count the path and cut enumerations accept.
pub const ORACLE_MAX_EDGES: usize = 64;

fn masks(g: &Multigraph) -> Result<(Vec<u64>, usize)> {
    if g.edge_count() > ORACLE_MAX_EDGES || g.vertex_count() > 64 {
        return Err(Error::TooLarge {
            vertices: g.vertex_count(),
            cap: 64,
        });
    }
    g.ensure_loopless()?;
    let n = g.vertex_count();
    let mut adj = vec![0u64; n];
    for &(a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Ok((adj, n))
}

fn set_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

/// Simple X,Y paths (first vertex the only one in X, last the only one in
/// Y) as (edge mask, interior vertex mask). `None` if more than `cap` exist.
pub fn xy_paths(g: &Multigraph, x: &VertexSet, y: &VertexSet, cap: usize) -> Result<Option<Vec<(u64, u64)>>> {
    masks(g)?;
    let (xm, ym) = (set_mask(x), set_mask(y));
    let mut out = Vec::new();
    fn walk(
        g: &Multigraph,
        v: usize,
        visited: u64,
        edges: u64,
        interior: u64,
        xm: u64,
        ym: u64,
        out: &mut Vec<(u64, u64)>,
        cap: usize,
    ) -> bool {
        for &(w, e) in g.neighbors(v) {
            if visited >> w & 1 == 1 || xm >> w & 1 == 1 {
                continue;
            }
            if ym >> w & 1 == 1 {
                out.push((edges | 1 << e, interior));
                if out.len() > cap {
                    return false;
                }
            } else if !walk(g, w, visited | 1 << w, edges | 1 << e, interior | 1 << w, xm, ym, out, cap) {
                return false;
            }
        }
        true
    }
    for s in x.iter() {
        if !walk(g, s, 1 << s, 0, 0, xm, ym, &mut out, cap) {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// Largest family of pairwise compatible paths, by exhaustive branching.
fn max_packing(paths: &[(u64, u64)], vertex_disjoint: bool) -> usize {
    fn rec(paths: &[(u64, u64)], from: usize, used_e: u64, used_v: u64, vd: bool, best: &mut usize, depth: usize) {
        *best = (*best).max(depth);
        if depth + (paths.len() - from) <= *best {
            return;
        }
        for i in from..paths.len() {
            let (e, v) = paths[i];
            if e & used_e == 0 && (!vd || v & used_v == 0) {
                rec(paths, i + 1, used_e | e, used_v | v, vd, best, depth + 1);
            }
        }
    }
    let mut best = 0;
    rec(paths, 0, 0, 0, vertex_disjoint, &mut best, 0);
    best
}

/// Maximum number of pairwise edge-disjoint X,Y paths, by path enumeration.
pub fn max_edge_disjoint_brute(g: &Multigraph, x: &VertexSet, y: &VertexSet, cap: usize) -> Result<Option<usize>> {
    Ok(xy_paths(g, x, y, cap)?.map(|p| max_packing(&p, false)))
}

/// Maximum number of internally vertex-disjoint X,Y paths, by path enumeration.
pub fn max_vertex_disjoint_brute(g: &Multigraph, x: &VertexSet, y: &VertexSet, cap: usize) -> Result<Option<usize>> {
    Ok(xy_paths(g, x, y, cap)?.map(|p| max_packing(&p, true)))
}

/// Whether `y` is reachable from `x` avoiding the removed vertices and edges.
fn linked(g: &Multigraph, xm: u64, ym: u64, dead_v: u64, dead_e: u64) -> bool {
    let mut seen = xm;
    let mut stack: Vec<usize> = (0..g.vertex_count()).filter(|&v| xm >> v & 1 == 1).collect();
    while let Some(v) = stack.pop() {
        for &(w, e) in g.neighbors(v) {
            if dead_e >> e & 1 == 1 || dead_v >> w & 1 == 1 || seen >> w & 1 == 1 {
                continue;
            }
            if ym >> w & 1 == 1 {
                return true;
            }
            seen |= 1 << w;
            stack.push(w);
        }
    }
    false
}

/// Calls `f` on every `k`-subset of `items` as a mask until it returns true.
fn any_subset(items: &[usize], k: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn rec(items: &[usize], k: usize, from: usize, mask: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(mask);
        }
        (from..items.len()).any(|i| items.len() - i >= k && rec(items, k - 1, i + 1, mask | 1 << items[i], f))
    }
    rec(items, k, 0, 0, f)
}

/// Size of a smallest edge set separating X from Y, by increasing subset size.
pub fn min_edge_cut_brute(g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    masks(g)?;
    let (xm, ym) = (set_mask(x), set_mask(y));
    let edges: Vec<usize> = (0..g.edge_count()).collect();
    for k in 0..=edges.len() {
        if any_subset(&edges, k, &mut |dead| !linked(g, xm, ym, 0, dead)) {
            return Ok(k);
        }
    }
    unreachable!("removing every edge separates")
}

/// Size of a smallest vertex set avoiding X and Y that separates them, or
/// `None` when an edge joins X to Y.
pub fn min_vertex_cut_brute(g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<Option<usize>> {
    masks(g)?;
    let (xm, ym) = (set_mask(x), set_mask(y));
    if g.edges().iter().any(|&(a, b)| (xm >> a & 1 == 1 && ym >> b & 1 == 1) || (xm >> b & 1 == 1 && ym >> a & 1 == 1)) {
        return Ok(None);
    }
    let free: Vec<usize> = (0..g.vertex_count()).filter(|&v| (xm | ym) >> v & 1 == 0).collect();
    for k in 0..=free.len() {
        if any_subset(&free, k, &mut |dead| !linked(g, xm, ym, dead, 0)) {
            return Ok(Some(k));
        }
    }
    unreachable!("removing every free vertex separates")
}

/// All connected vertex sets, by testing every mask.
pub fn connected_sets_brute(g: &Multigraph) -> Result<Vec<u64>> {
    let (adj, n) = masks(g)?;
    if n > 20 {
        return Err(Error::TooLarge { vertices: n, cap: 20 });
    }
    let connected = |s: u64| {
        let start = s & s.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..n {
                if frontier >> v & 1 == 1 {
                    next |= adj[v];
                }
            }
            frontier = next & s & !seen;
            seen |= frontier;
        }
        seen == s
    };
    Ok((1u64..(1 << n)).filter(|&s| connected(s)).collect())
}

fn to_set(mask: u64) -> VertexSet {
    VertexSet::new((0..64).filter(|v| mask >> v & 1 == 1))
}

/// Edge bottleneck number: largest minimum edge cut over disjoint
/// connected pairs, with cuts found by subset enumeration.
pub fn edge_bottleneck_brute(g: &Multigraph) -> Result<usize> {
    g.ensure_connected()?;
    let sets = connected_sets_brute(g)?;
    let boundary = |s: u64| g.edges().iter().filter(|&&(a, b)| (s >> a & 1) != (s >> b & 1)).count();
    let mut best = 0;
    for (i, &x) in sets.iter().enumerate() {
        for &y in &sets[i + 1..] {
            if x & y != 0 || boundary(x).min(boundary(y)) <= best {
                continue;
            }
            best = best.max(min_edge_cut_brute(g, &to_set(x), &to_set(y))?);
        }
    }
    Ok(best)
}

/// Point bottleneck number over disjoint connected pairs not joined by an edge.
pub fn point_bottleneck_brute(g: &Multigraph) -> Result<usize> {
    g.ensure_connected()?;
    let sets = connected_sets_brute(g)?;
    let mut best = 0;
    for (i, &x) in sets.iter().enumerate() {
        for &y in &sets[i + 1..] {
            if x & y != 0 {
                continue;
            }
            if let Some(c) = min_vertex_cut_brute(g, &to_set(x), &to_set(y))? {
                best = best.max(c);
            }
        }
    }
    Ok(best)
}

/// Widest ladder by brute force: the largest vertex-disjoint path packing
/// over all disjoint connected pairs.
pub fn widest_ladder_brute(g: &Multigraph, path_cap: usize) -> Result<Option<usize>> {
    g.ensure_connected()?;
    let sets = connected_sets_brute(g)?;
    let mut best = 0;
    for (i, &x) in sets.iter().enumerate() {
        for &y in &sets[i + 1..] {
            if x & y != 0 {
                continue;
            }
            match max_vertex_disjoint_brute(g, &to_set(x), &to_set(y), path_cap)? {
                Some(k) => best = best.max(k),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn spec_values() {
        assert_eq!(edge_bottleneck_brute(&cycle(6)).unwrap(), 2);
        assert_eq!(edge_bottleneck_brute(&complete(4)).unwrap(), 4);
        assert_eq!(edge_bottleneck_brute(&domino()).unwrap(), 3);
        assert_eq!(point_bottleneck_brute(&cycle(6)).unwrap(), 2);
        assert_eq!(point_bottleneck_brute(&path(5)).unwrap(), 1);
        let k4 = complete(4);
        assert_eq!(max_edge_disjoint_brute(&k4, &set(&[0]), &set(&[1]), 1000).unwrap(), Some(3));
        assert_eq!(min_edge_cut_brute(&k4, &set(&[0]), &set(&[1])).unwrap(), 3);
        assert_eq!(min_vertex_cut_brute(&k4, &set(&[0]), &set(&[1])).unwrap(), None);
    }
}
