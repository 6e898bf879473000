use bottleneck_core::small::connected_graphs;

#[test]
fn connected_graph_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn corpus_graphs_are_connected_and_simple() {
    for g in connected_graphs(6) {
        assert!(g.is_connected());
        assert!(g.is_simple());
    }
}
