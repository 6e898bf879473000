use bottleneck_lab::format::{canonical, parse_graph, serialize_graph, GraphFormat, ParseError};
use bottleneck_core::Multigraph;
use proptest::prelude::*;

fn multigraph() -> impl Strategy<Value = Multigraph> {
    (1usize..9).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..20).prop_map(move |pairs| {
            // a path through every vertex keeps ids contiguous
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            edges.extend(pairs.into_iter().filter(|(a, b)| a != b));
            if n == 1 {
                edges.clear();
            }
            Multigraph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn both_formats_round_trip(g in multigraph()) {
        prop_assume!(g.edge_count() > 0);
        let c = canonical(&g);
        for format in [GraphFormat::EdgeList, GraphFormat::Json] {
            let text = serialize_graph(&g, format);
            let back = parse_graph(&text, format).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(serialize_graph(&back, format), serialize_graph(&c, format));
        }
    }

    #[test]
    fn canonical_is_idempotent(g in multigraph()) {
        let c = canonical(&g);
        prop_assert_eq!(canonical(&c), c.clone());
        prop_assert!(c.edges().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(c.edges().iter().all(|&(a, b)| a < b));
    }
}

#[test]
fn rejects_malformed_documents() {
    assert_eq!(parse_graph("", GraphFormat::EdgeList), Err(ParseError::Empty));
    assert_eq!(parse_graph("# only a comment\n", GraphFormat::EdgeList), Err(ParseError::Empty));
    let e = parse_graph(r#"{"vertices": 2, "edges": [[0, 1]], "extra": 1}"#, GraphFormat::Json).unwrap_err();
    assert!(matches!(e, ParseError::Json(_)));
    let e = parse_graph(r#"{"vertices": 2, "edges": [[0, 2]]}"#, GraphFormat::Json).unwrap_err();
    assert_eq!(e, ParseError::Dangling { id: 2, vertices: 2 });
    let e = parse_graph(r#"{"vertices": 2, "edges": [[0, 1]], "labels": ["a"]}"#, GraphFormat::Json).unwrap_err();
    assert!(matches!(e, ParseError::Graph(_)), "{e:?}");
}

#[test]
fn labels_survive_json() {
    let text = r#"{"vertices": 3, "edges": [[0, 1], [1, 2]], "labels": ["a", "b", "c"]}"#;
    let g = parse_graph(text, GraphFormat::Json).unwrap();
    assert_eq!(g.labels().unwrap(), ["a", "b", "c"]);
    let back = parse_graph(&serialize_graph(&g, GraphFormat::Json), GraphFormat::Json).unwrap();
    assert_eq!(back, g);
}
