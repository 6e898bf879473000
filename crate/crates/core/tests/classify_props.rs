mod common;

use bottleneck_core::bottleneck::find_dipole_ladder;
use bottleneck_core::classify::{classify_graph, cycle_intersection_oracle, ClassLabel, IntersectionKind, DEFAULT_CYCLE_CAP};
use bottleneck_core::oracle::{edge_bottleneck_brute, max_edge_disjoint_brute};
use bottleneck_core::{edge_bottleneck_exact, Budget, Multigraph};
use common::*;
use proptest::prelude::*;

fn unique_paths(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            bottleneck_core::oracle::xy_paths(g, &set(&[u]), &set(&[v]), 2).unwrap().map_or(false, |p| p.len() == 1)
        })
    })
}

fn check_equivalences(g: &Multigraph) -> Result<(), TestCaseError> {
    let budget = Budget::default();
    let (b, _, _) = edge_bottleneck_exact(g, &budget).unwrap();
    let worst = cycle_intersection_oracle(g, DEFAULT_CYCLE_CAP).unwrap();
    let no_cycles = g.cycle_rank() == 0;
    let d = |k| find_dipole_ladder(g, k, &budget).unwrap();
    let (d2, d3, d4) = (d(2), d(3), d(4));
    prop_assert!(!d2.is_unknown() && !d3.is_unknown() && !d4.is_unknown());

    // trees
    prop_assert_eq!(no_cycles, b == 1);
    prop_assert_eq!(no_cycles, d2.is_none());
    prop_assert_eq!(no_cycles, unique_paths(g));
    prop_assert_eq!(no_cycles, worst.cycle_count == 0);
    // cacti
    let cactus = worst.worst <= IntersectionKind::SingleVertex;
    prop_assert_eq!(cactus, b <= 2);
    prop_assert_eq!(cactus, d3.is_none());
    // cut-cacti
    let cut_cactus = worst.worst <= IntersectionKind::ConnectedMultiVertex;
    prop_assert_eq!(cut_cactus, b <= 3);
    prop_assert_eq!(cut_cactus, d4.is_none());

    let r = classify_graph(g, &budget).unwrap();
    let want = if no_cycles {
        ClassLabel::Tree
    } else if cactus {
        ClassLabel::Cactus
    } else if cut_cactus {
        ClassLabel::CutCactus
    } else {
        ClassLabel::General
    };
    prop_assert_eq!(r.label, want);
    prop_assert_eq!(r.edge_bottleneck, Some(b));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hierarchy_equivalences_on_multigraphs(g in connected_multigraph(7, 5, 3)) {
        check_equivalences(&g)?;
    }

    #[test]
    fn hierarchy_equivalences_on_sparse_graphs(g in connected_simple(9, 4)) {
        check_equivalences(&g)?;
    }
}

#[test]
fn fixture_equivalences() {
    for g in [path(6), cycle(5), bowtie(), domino(), complete(4), complete(5), dipole(3), grid(3, 3)] {
        check_equivalences(&g).unwrap();
    }
}

#[test]
fn cycle_oracle_counts() {
    assert_eq!(cycle_intersection_oracle(&domino(), DEFAULT_CYCLE_CAP).unwrap().cycle_count, 3);
    assert_eq!(cycle_intersection_oracle(&complete(4), DEFAULT_CYCLE_CAP).unwrap().cycle_count, 7);
    assert_eq!(cycle_intersection_oracle(&dipole(3), DEFAULT_CYCLE_CAP).unwrap().cycle_count, 3);
    assert_eq!(edge_bottleneck_brute(&dipole(3)).unwrap(), 3);
    assert_eq!(max_edge_disjoint_brute(&dipole(3), &set(&[0]), &set(&[1]), 100).unwrap(), Some(3));
}
