mod common;

use bottleneck_core::bottleneck::{find_dipole_ladder, find_theta_subdivision, is_normal_four_ladder, normalize_four_ladder};
use bottleneck_core::oracle::{edge_bottleneck_brute, point_bottleneck_brute};
use bottleneck_core::{edge_bottleneck_exact, point_bottleneck_exact, Budget, ReductionOp};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_values_match_brute_force(g in connected_multigraph(6, 5, 2)) {
        let budget = Budget::default();
        let (b, ladder, report) = edge_bottleneck_exact(&g, &budget).unwrap();
        prop_assert_eq!(b, edge_bottleneck_brute(&g).unwrap());
        ladder.validate(&g).unwrap();
        // ladder/cut duality
        prop_assert_eq!(ladder.width(), b);
        prop_assert_eq!(report.cut.as_ref().unwrap().size(), b);
        let (p, _) = point_bottleneck_exact(&g, &budget).unwrap();
        prop_assert_eq!(p, point_bottleneck_brute(&g).unwrap());
    }

    #[test]
    fn minor_steps_never_raise_the_bottleneck(g in connected_multigraph(7, 7, 2), kind in 0u8..3, idx: prop::sample::Index) {
        let budget = Budget::default();
        let op = match kind {
            0 => ReductionOp::ContractEdge(idx.index(g.edge_count())),
            1 => ReductionOp::DeleteEdge(idx.index(g.edge_count())),
            _ => ReductionOp::DeleteVertex(idx.index(g.vertex_count())),
        };
        let r = g.minor_reduce(op).unwrap();
        if !r.disconnected && r.graph.vertex_count() > 1 && r.graph.self_loop().is_none() {
            let (before, _, _) = edge_bottleneck_exact(&g, &budget).unwrap();
            let (after, _, _) = edge_bottleneck_exact(&r.graph, &budget).unwrap();
            prop_assert!(after <= before);
        }
    }

    #[test]
    fn witnesses_are_coherent(g in connected_multigraph(8, 8, 2)) {
        let budget = Budget::default();
        let (b, _, _) = edge_bottleneck_exact(&g, &budget).unwrap();
        let at = find_dipole_ladder(&g, b, &budget).unwrap();
        let found = at.found();
        prop_assert!(found.is_some());
        found.unwrap().validate(&g).unwrap();
        prop_assert!(find_dipole_ladder(&g, b + 1, &budget).unwrap().is_none());
    }

    #[test]
    fn subdividing_bounds_the_point_bottleneck(g in connected_multigraph(7, 5, 2)) {
        let budget = Budget::default();
        let (b, _, _) = edge_bottleneck_exact(&g, &budget).unwrap();
        let (p, _) = point_bottleneck_exact(&g.subdivide_all(), &budget).unwrap();
        prop_assert!(p <= b);
    }

    #[test]
    fn three_ladders_give_thetas(g in connected_multigraph(8, 8, 2)) {
        if find_dipole_ladder(&g, 3, &Budget::default()).unwrap().is_found() {
            let t = find_theta_subdivision(&g).unwrap();
            prop_assert!(t.is_some());
            t.unwrap().validate(&g).unwrap();
        }
    }

    #[test]
    fn normalized_four_ladders_are_valid(g in connected_simple(8, 12)) {
        if let Some(l) = find_dipole_ladder(&g, 4, &Budget::default()).unwrap().found() {
            let n = normalize_four_ladder(&g, &l).unwrap();
            n.validate(&g).unwrap();
            prop_assert_eq!(n.width(), 4);
            prop_assert!(is_normal_four_ladder(&g, &n));
        }
    }
}
