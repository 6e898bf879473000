//! Every connected simple graph on a few vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding a vertex
//! with every nonempty neighborhood (every connected graph has a vertex
//! whose removal keeps it connected), then deduplicated by a canonical code.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Multigraph;

/// Adjacency bitmasks of a simple graph.
type Adj = Vec<u8>;

/// Largest vertex count the enumerator supports.
pub const MAX_SMALL_VERTICES: usize = 8;

/// Canonical code: the lexicographically largest upper-triangle bit string
/// over relabelings that list vertices by refined degree class.
fn canonical(adj: &Adj) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| deg[w]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let keys: Vec<_> = order.iter().map(|&v| key(v)).collect();
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u8;
    fn rec(adj: &Adj, order: &[usize], keys: &[(u32, Vec<u32>)], perm: &mut Vec<usize>, used: &mut u8, best: &mut u64) {
        let n = adj.len();
        let pos = perm.len();
        if pos == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | u64::from(adj[perm[i]] >> perm[j] & 1);
                }
            }
            *best = (*best).max(code);
            return;
        }
        for (idx, &v) in order.iter().enumerate() {
            if keys[idx] == keys[pos] && *used >> v & 1 == 0 {
                *used |= 1 << v;
                perm.push(v);
                rec(adj, order, keys, perm, used, best);
                perm.pop();
                *used &= !(1 << v);
            }
        }
    }
    rec(adj, &order, &keys, &mut perm, &mut used, &mut best);
    // the vertex count disambiguates codes of different sizes
    best << 4 | n as u64
}

fn connected(adj: &Adj) -> bool {
    let n = adj.len();
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

fn to_graph(adj: &Adj) -> Multigraph {
    let n = adj.len();
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).filter(move |&b| adj[a] >> b & 1 == 1).map(move |b| (a, b)))
        .collect();
    Multigraph::from_edges(n, edges).expect("valid ids")
}

fn level(n: usize) -> Vec<Adj> {
    if n == 1 {
        return vec![vec![0]];
    }
    let prev = level(n - 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for h in &prev {
        for nbrs in 1u8..(1 << (n - 1)) {
            let mut adj = h.clone();
            adj.push(nbrs);
            for (v, a) in adj.iter_mut().enumerate().take(n - 1) {
                if nbrs >> v & 1 == 1 {
                    *a |= 1 << (n - 1);
                }
            }
            debug_assert!(connected(&adj));
            let code = canonical(&adj);
            if seen.insert(code) {
                out.push((code, adj));
            }
        }
    }
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, a)| a).collect()
}

/// All connected simple graphs on exactly `n` vertices, up to isomorphism,
/// in a fixed order.
pub fn connected_graphs(n: usize) -> Vec<Multigraph> {
    assert!((1..=MAX_SMALL_VERTICES).contains(&n), "vertex count out of range");
    level(n).iter().map(to_graph).collect()
}

/// All connected simple graphs on 1 to `max_n` vertices.
pub fn corpus(max_n: usize) -> Vec<Multigraph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_code_ignores_labels() {
        // path 0-1-2 labeled two ways
        let a: Adj = vec![0b010, 0b101, 0b010];
        let b: Adj = vec![0b100, 0b100, 0b011];
        assert_eq!(canonical(&a), canonical(&b));
        let tri: Adj = vec![0b110, 0b101, 0b011];
        assert_ne!(canonical(&a), canonical(&tri));
    }
}
