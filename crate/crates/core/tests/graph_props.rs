mod common;

use bottleneck_core::graph::UNREACHABLE;
use bottleneck_core::{Multigraph, ReductionOp, VertexSet};
use common::*;
use proptest::prelude::*;

fn subset(g: &Multigraph, bits: u64) -> VertexSet {
    let n = g.vertex_count();
    let s = VertexSet::new((0..n).filter(|v| bits >> v & 1 == 1));
    if s.is_empty() {
        VertexSet::singleton(0)
    } else {
        s
    }
}

/// Reduction ops are addressed by the old ids; `apply` maps them through
/// earlier steps.
fn apply(g: &Multigraph, ops: &[ReductionOp]) -> Option<Multigraph> {
    let mut cur = g.clone();
    let mut vmap: Vec<Option<usize>> = (0..g.vertex_count()).map(Some).collect();
    let mut emap: Vec<Option<usize>> = (0..g.edge_count()).map(Some).collect();
    for op in ops {
        let mapped = match *op {
            ReductionOp::ContractEdge(e) => ReductionOp::ContractEdge(emap[e]?),
            ReductionOp::DeleteEdge(e) => ReductionOp::DeleteEdge(emap[e]?),
            ReductionOp::DeleteVertex(v) => ReductionOp::DeleteVertex(vmap[v]?),
        };
        let r = cur.minor_reduce(mapped).unwrap();
        for m in vmap.iter_mut() {
            *m = m.and_then(|v| r.vertex_map[v]);
        }
        for m in emap.iter_mut() {
            *m = m.and_then(|e| r.edge_map[e]);
        }
        cur = r.graph;
    }
    Some(cur)
}

proptest! {
    #[test]
    fn neighborhood_is_monotone_and_matches_distance(g in connected_multigraph(9, 6, 2), bits: u64, m in 0usize..5) {
        let s = subset(&g, bits);
        let a = g.neighborhood(&s, m).unwrap();
        let b = g.neighborhood(&s, m + 1).unwrap();
        prop_assert!(a.iter().all(|v| b.contains(v)));
        for x in 0..g.vertex_count() {
            let d = g.set_distance(&VertexSet::singleton(x), &s).unwrap();
            prop_assert_eq!(a.contains(x), d < m);
        }
    }

    #[test]
    fn components_partition_the_rest(g in connected_multigraph(9, 6, 2), bits: u64) {
        let f = VertexSet::new((0..g.vertex_count()).filter(|v| bits >> v & 1 == 1));
        let comps = g.components_excluding(&f);
        let mut owner = vec![None; g.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            prop_assert!(!c.is_empty());
            for v in c.iter() {
                prop_assert!(!f.contains(v));
                prop_assert!(owner[v].is_none());
                owner[v] = Some(i);
            }
        }
        for v in 0..g.vertex_count() {
            prop_assert_eq!(owner[v].is_some(), !f.contains(v));
        }
        for &(a, b) in g.edges() {
            if let (Some(x), Some(y)) = (owner[a], owner[b]) {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn subdivision_doubles_distances(g in connected_multigraph(8, 6, 2)) {
        let s = g.subdivide_all();
        prop_assert!(s.is_connected());
        prop_assert_eq!(s.vertex_count(), g.vertex_count() + g.edge_count());
        prop_assert_eq!(s.edge_count(), 2 * g.edge_count());
        for u in 0..g.vertex_count() {
            let d = g.distances_from(&[u]);
            let ds = s.distances_from(&[u]);
            for v in 0..g.vertex_count() {
                prop_assert!(d[v] != UNREACHABLE);
                prop_assert_eq!(ds[v], 2 * d[v]);
            }
        }
    }

    #[test]
    fn reduction_order_does_not_matter(g in connected_multigraph(6, 5, 2), picks in proptest::collection::vec((0u8..3, any::<prop::sample::Index>()), 2..4)) {
        // distinct targets: edges for contract/delete, vertices for delete-vertex
        let mut ops: Vec<ReductionOp> = Vec::new();
        let mut used_e = vec![false; g.edge_count()];
        let mut used_v = vec![false; g.vertex_count()];
        for (kind, idx) in picks {
            match kind {
                0 | 1 => {
                    let e = idx.index(g.edge_count());
                    if used_e[e] { continue; }
                    used_e[e] = true;
                    ops.push(if kind == 0 { ReductionOp::ContractEdge(e) } else { ReductionOp::DeleteEdge(e) });
                }
                _ => {
                    let v = idx.index(g.vertex_count());
                    if used_v[v] { continue; }
                    used_v[v] = true;
                    ops.push(ReductionOp::DeleteVertex(v));
                }
            }
        }
        // vertex deletions must not remove an endpoint of a chosen edge
        let ends: Vec<usize> = ops.iter().filter_map(|op| match *op {
            ReductionOp::ContractEdge(e) | ReductionOp::DeleteEdge(e) => Some(g.edge(e)),
            ReductionOp::DeleteVertex(_) => None,
        }).flat_map(|(a, b)| [a, b]).collect();
        ops.retain(|op| !matches!(*op, ReductionOp::DeleteVertex(v) if ends.contains(&v)));
        let forward = apply(&g, &ops);
        let mut rev = ops.clone();
        rev.reverse();
        let backward = apply(&g, &rev);
        if let (Some(a), Some(b)) = (forward, backward) {
            prop_assert_eq!(multigraph_code(&a), multigraph_code(&b));
        }
    }
}

#[test]
fn spec_fixtures() {
    let c6 = cycle(6);
    assert_eq!(c6.neighborhood(&set(&[0]), 2).unwrap(), set(&[0, 1, 5]));
    assert_eq!(c6.neighborhood(&set(&[2, 4]), 1).unwrap(), set(&[2, 4]));
    assert_eq!(path(5).neighborhood(&set(&[0, 4]), 3).unwrap(), set(&[0, 1, 2, 3, 4]));
    assert_eq!(path(5).set_distance(&set(&[0]), &set(&[4])).unwrap(), 4);
    assert_eq!(c6.set_distance(&set(&[0]), &set(&[3])).unwrap(), 3);
    assert_eq!(c6.set_distance(&set(&[1, 2]), &set(&[1, 2])).unwrap(), 0);

    let r = cycle(3).minor_reduce(ReductionOp::ContractEdge(0)).unwrap();
    assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (2, 2));
    let r = path(3).minor_reduce(ReductionOp::DeleteEdge(1)).unwrap();
    assert_eq!(r.graph.vertex_count(), 3);
    assert!(r.disconnected);
    let r = dipole(3).minor_reduce(ReductionOp::DeleteEdge(1)).unwrap();
    assert_eq!(multigraph_code(&r.graph), multigraph_code(&dipole(2)));

    assert_eq!(multigraph_code(&cycle(3).subdivide_all()), multigraph_code(&cycle(6)));
    let s = complete(4).subdivide_all();
    assert_eq!((s.vertex_count(), s.edge_count()), (10, 12));
    assert_eq!(multigraph_code(&dipole(2).subdivide_all()), multigraph_code(&cycle(4)));

    assert_eq!(path(5).components_excluding(&set(&[2])), vec![set(&[0, 1]), set(&[3, 4])]);
    assert_eq!(c6.components_excluding(&VertexSet::default()), vec![set(&[0, 1, 2, 3, 4, 5])]);
    assert_eq!(c6.components_excluding(&set(&[0, 3])), vec![set(&[1, 2]), set(&[4, 5])]);
}
