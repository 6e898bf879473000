#![allow(dead_code)]

use bottleneck_core::{Multigraph, VertexSet};
use proptest::prelude::*;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
    Multigraph::from_edges(n, edges.to_vec()).unwrap()
}

pub fn path(n: usize) -> Multigraph {
    graph(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Multigraph {
    graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Multigraph {
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            e.push((a, b));
        }
    }
    graph(n, &e)
}

pub fn dipole(k: usize) -> Multigraph {
    graph(2, &vec![(0, 1); k])
}

pub fn bowtie() -> Multigraph {
    graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
}

/// Two 4-cycles 0-1-4-5 and 1-2-3-4 sharing the edge 1-4.
pub fn domino() -> Multigraph {
    graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)])
}

pub fn grid(rows: usize, cols: usize) -> Multigraph {
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
            }
        }
    }
    graph(rows * cols, &e)
}

pub fn set(v: &[usize]) -> VertexSet {
    VertexSet::new(v.iter().copied())
}

/// Connected multigraphs: a random spanning tree plus extra edges, each
/// edge repeated up to `mult` times.
pub fn connected_multigraph(max_n: usize, extra: usize, mult: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extras = proptest::collection::vec((0..n, 0..n, 1..=mult), 0..=extra);
        let reps = proptest::collection::vec(1..=mult, n - 1);
        (Just(n), parents, extras, reps).prop_map(|(n, parents, extras, reps)| {
            let mut e = Vec::new();
            for (i, (p, r)) in parents.iter().zip(reps).enumerate() {
                let v = i + 1;
                let u = p.index(v);
                e.extend(std::iter::repeat((u, v)).take(r));
            }
            for (a, b, r) in extras {
                if a != b {
                    e.extend(std::iter::repeat((a.min(b), a.max(b))).take(r));
                }
            }
            graph(n, &e)
        })
    })
}

pub fn connected_simple(max_n: usize, extra: usize) -> impl Strategy<Value = Multigraph> {
    connected_multigraph(max_n, extra, 1).prop_map(|g| {
        let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e.dedup();
        graph(g.vertex_count(), &e)
    })
}

/// Isomorphism-invariant code of a small multigraph: lexicographically
/// smallest sorted edge list over all relabelings.
pub fn multigraph_code(g: &Multigraph) -> (usize, Vec<(usize, usize)>) {
    let n = g.vertex_count();
    assert!(n <= 8);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        e.sort_unstable();
        if best.as_ref().map_or(true, |b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
