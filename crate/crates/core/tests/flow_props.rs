mod common;

use bottleneck_core::flow::{connectivity_profile, max_edge_disjoint, max_vertex_disjoint};
use bottleneck_core::oracle::{max_edge_disjoint_brute, max_vertex_disjoint_brute, min_edge_cut_brute, min_vertex_cut_brute};
use bottleneck_core::{edge_bottleneck_exact, Budget, Multigraph, ReductionOp, VertexSet};
use common::*;
use proptest::prelude::*;

/// Two disjoint nonempty connected sets carved from random bits, if any.
fn pair(g: &Multigraph, xb: u64, yb: u64) -> Option<(VertexSet, VertexSet)> {
    let n = g.vertex_count();
    let x = VertexSet::new((0..n).filter(|v| xb >> v & 1 == 1));
    let y = VertexSet::new((0..n).filter(|v| yb >> v & 1 == 1 && xb >> v & 1 == 0));
    (!x.is_empty() && !y.is_empty() && g.induces_connected(&x) && g.induces_connected(&y)).then_some((x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn edge_mode_menger(g in connected_multigraph(6, 5, 3), xb: u64, yb: u64) {
        if let Some((x, y)) = pair(&g, xb, yb) {
            let r = max_edge_disjoint(&g, &x, &y).unwrap();
            r.paths.verify(&g).unwrap();
            prop_assert_eq!(r.paths.paths.len(), r.count);
            prop_assert_eq!(r.cut.size(), r.count);
            prop_assert!(r.cut.separates(&g, &x, &y).unwrap());
            prop_assert_eq!(r.count, min_edge_cut_brute(&g, &x, &y).unwrap());
            if let Some(b) = max_edge_disjoint_brute(&g, &x, &y, 20_000).unwrap() {
                prop_assert_eq!(r.count, b);
            }
        }
    }

    #[test]
    fn vertex_mode_menger(g in connected_multigraph(6, 5, 3), xb: u64, yb: u64) {
        if let Some((x, y)) = pair(&g, xb, yb) {
            let r = max_vertex_disjoint(&g, &x, &y).unwrap();
            r.paths.verify(&g).unwrap();
            prop_assert_eq!(r.paths.paths.len(), r.count);
            let brute_cut = min_vertex_cut_brute(&g, &x, &y).unwrap();
            match &r.cut {
                Some(c) => {
                    prop_assert_eq!(c.size(), r.count);
                    prop_assert!(c.separates(&g, &x, &y).unwrap());
                    prop_assert_eq!(Some(r.count), brute_cut);
                }
                None => prop_assert!(brute_cut.is_none()),
            }
            if let Some(b) = max_vertex_disjoint_brute(&g, &x, &y, 20_000).unwrap() {
                prop_assert_eq!(r.count, b);
            }
        }
    }

    #[test]
    fn deleting_an_edge_never_raises_connectivity(g in connected_multigraph(8, 8, 2), e: prop::sample::Index) {
        let p = connectivity_profile(&g, false).unwrap();
        prop_assert!(p.lambda_min <= p.lambda_max);
        let r = g.minor_reduce(ReductionOp::DeleteEdge(e.index(g.edge_count()))).unwrap();
        if !r.disconnected {
            let q = connectivity_profile(&r.graph, false).unwrap();
            prop_assert!(q.lambda_min <= p.lambda_min);
            prop_assert!(q.lambda_max <= p.lambda_max);
        }
    }

    #[test]
    fn edge_bottleneck_dominates_lambda_max(g in connected_multigraph(8, 8, 3)) {
        let p = connectivity_profile(&g, false).unwrap();
        let (b, _, _) = edge_bottleneck_exact(&g, &Budget::default()).unwrap();
        prop_assert!(b >= p.lambda_max);
    }
}

#[test]
fn tree_pairs_have_one_path() {
    let t = graph(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
    for (x, y) in [(set(&[3]), set(&[6])), (set(&[0, 1]), set(&[5])), (set(&[4]), set(&[2, 6]))] {
        assert_eq!(max_edge_disjoint(&t, &x, &y).unwrap().count, 1);
    }
    let p5 = path(5);
    let r = max_vertex_disjoint(&p5, &set(&[0]), &set(&[4])).unwrap();
    assert_eq!(r.count, 1);
    let c = r.cut.unwrap();
    assert_eq!(c.size(), 1);
    assert!([1, 2, 3].contains(&c.members[0]));
}
