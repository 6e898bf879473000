//! Bitmask views of small graphs and enumeration of connected vertex sets.
//!
//! Exhaustive searches in this crate work on graphs with at most 64
//! vertices, where a vertex set fits in a `u64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet, UNREACHABLE};

pub const MAX_MASK_VERTICES: usize = 64;

/// Adjacency of a graph as one neighbor mask per vertex (parallel edges collapse).
#[derive(Debug, Clone)]
pub struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl MaskGraph {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let n = g.vertex_count();
        if n > MAX_MASK_VERTICES {
            return Err(Error::TooLarge {
                vertices: n,
                cap: MAX_MASK_VERTICES,
            });
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in g.edges() {
            if a != b {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        Ok(MaskGraph { n, adj })
    }

    pub fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Open neighborhood of a set.
    pub fn boundary(&self, set: u64) -> u64 {
        let mut out = 0;
        for v in bits(set) {
            out |= self.adj[v];
        }
        out & !set
    }

    /// Vertices of `within` reachable from `from` inside `within`.
    pub fn reach(&self, from: u64, within: u64) -> u64 {
        let mut seen = from & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected_set(&self, set: u64) -> bool {
        set != 0 && self.reach(set & set.wrapping_neg(), set) == set
    }

    /// BFS distance from `set` to every vertex.
    pub fn distances(&self, set: u64) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut seen = set;
        let mut frontier = set;
        let mut d = 0;
        while frontier != 0 {
            for v in bits(frontier) {
                dist[v] = d;
            }
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            d += 1;
        }
        dist
    }

    /// Ball masks `N_radius(v)` (strict) for every vertex.
    pub fn balls(&self, radius: usize) -> Vec<u64> {
        (0..self.n)
            .map(|v| {
                if radius == 0 {
                    return 0;
                }
                let mut seen = 1u64 << v;
                let mut frontier = seen;
                for _ in 1..radius {
                    let mut next = 0;
                    for w in bits(frontier) {
                        next |= self.adj[w];
                    }
                    next &= !seen;
                    if next == 0 {
                        break;
                    }
                    seen |= next;
                    frontier = next;
                }
                seen
            })
            .collect()
    }
}

/// Iterator over the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn mask_of(set: &VertexSet) -> u64 {
    set.iter().fold(0, |m, v| m | (1 << v))
}

pub fn set_of(mask: u64) -> VertexSet {
    VertexSet::new(bits(mask))
}

/// All connected vertex sets of `g`, each exactly once, grouped by smallest
/// member and in depth-first extension order within a group. Returns `None`
/// once more than `limit` sets have been produced.
pub fn connected_subsets(g: &MaskGraph, limit: usize) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    for root in 0..g.n {
        let banned = (1u64 << root) | ((1u64 << root) - 1);
        let cand = g.adj[root] & !banned;
        if !extend(g, 1 << root, cand, banned, &mut out, limit) {
            return None;
        }
    }
    Some(out)
}

fn extend(g: &MaskGraph, current: u64, cand: u64, banned: u64, out: &mut Vec<u64>, limit: usize) -> bool {
    if out.len() >= limit {
        return false;
    }
    out.push(current);
    let mut cand = cand;
    let mut banned = banned;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        let bit = 1u64 << u;
        cand &= !bit;
        banned |= bit;
        let next = (cand | g.adj[u]) & !banned & !current;
        if !extend(g, current | bit, next, banned, out, limit) {
            return false;
        }
    }
    true
}
