use qlouvain::community::modularity_of;
use qlouvain::error::Error;
use qlouvain::graph::{
    aggregate, community_of, generate_fcs, generate_fcs_labeled, parse_edge_list, read_edge_list,
    write_edge_list, FcsConfig, Graph,
};

fn triangle() -> Graph {
    Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
}

#[test]
fn triangle_basics() {
    let g = triangle();
    assert_eq!(g.n(), 3);
    assert_eq!(g.edge_count(), 3);
    assert_eq!(g.arc_count(), 6);
    assert_eq!(g.total_weight(), 3.0);
    assert_eq!(g.strengths(), &[2.0, 2.0, 2.0]);
    assert_eq!(g.neighbors(1), &[0, 2]);
    assert_eq!(g.weight(0, 2), 1.0);
    assert_eq!(g.weight(0, 0), 0.0);
}

#[test]
fn adjacency_is_symmetric_and_sorted() {
    let g = generate_fcs(&FcsConfig::new(500, 4.0, 25, 0.4, 11)).unwrap();
    for u in 0..g.n() as u32 {
        let nb = g.neighbors(u);
        assert!(nb.windows(2).all(|w| w[0] < w[1]));
        assert!(!nb.contains(&u));
        for (v, w) in g.adjacency(u) {
            assert_eq!(g.weight(v, u), w);
        }
        let s: f64 = g.neighbor_weights(u).iter().sum();
        assert_eq!(s, g.strength(u));
    }
    let total: f64 = g.strengths().iter().sum();
    assert_eq!(total / 2.0, g.total_weight());
}

#[test]
fn parses_comments_weights_and_isolated_tail() {
    let (g, meta) =
        read_edge_list("# hello\n0 1\n\n1 2 2.5\n# fcs n=6 d=1 S=3 mu=0.5 seed=4\n".as_bytes())
            .unwrap();
    assert_eq!(g.n(), 6);
    assert_eq!(g.weight(1, 2), 2.5);
    let fcs = meta.fcs.unwrap();
    assert_eq!((fcs.n, fcs.community_size, fcs.seed), (6, 3, 4));
}

#[test]
fn rejects_malformed_input() {
    assert!(matches!(
        parse_edge_list("0 1\n2 2\n"),
        Err(Error::SelfLoop { line: 2, vertex: 2 })
    ));
    assert!(matches!(
        parse_edge_list("0 1\n1 0\n"),
        Err(Error::DuplicateEdge { u: 0, v: 1 })
    ));
    assert!(matches!(
        parse_edge_list("0 x\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_edge_list("0 1 -1\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_edge_list("0 1 0\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_edge_list("# nothing\n"),
        Err(Error::EmptyGraph)
    ));
    assert!(matches!(
        Graph::from_edges(2, [(0, 5, 1.0)]),
        Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
    ));
}

#[test]
fn write_read_round_trip() {
    let g = Graph::from_edges(5, [(0, 1, 1.0), (1, 2, 3.5), (3, 0, 1.0)]).unwrap();
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf, Some("fcs n=5 d=1 S=5 mu=0 seed=1")).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("# fcs n=5"));
    assert!(text.contains("\n0 1\n"));
    assert!(text.contains("1 2 3.5"));
    let (back, _) = read_edge_list(text.as_bytes()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn fcs_edge_count_and_determinism() {
    let cfg = FcsConfig::new(1000, 5.0, 50, 0.5, 9);
    let a = generate_fcs(&cfg).unwrap();
    let b = generate_fcs(&cfg).unwrap();
    assert_eq!(a.edge_count(), 5000);
    assert_eq!(a, b);
    let other = generate_fcs(&FcsConfig {
        seed: 10,
        ..cfg.clone()
    })
    .unwrap();
    assert_ne!(a, other);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    write_edge_list(&a, &mut x, Some(&cfg.header())).unwrap();
    write_edge_list(&b, &mut y, Some(&cfg.header())).unwrap();
    assert_eq!(x, y);
}

#[test]
fn fcs_fractional_degree_rounds_up() {
    let g = generate_fcs(&FcsConfig::new(101, 2.5, 10, 0.3, 1)).unwrap();
    assert_eq!(g.edge_count(), 253);
}

#[test]
fn fcs_mixing_extremes() {
    let cfg = FcsConfig::new(200, 3.0, 20, 0.0, 2);
    let (g, labels) = generate_fcs_labeled(&cfg).unwrap();
    assert!(g
        .edges()
        .all(|(u, v, _)| labels[u as usize] == labels[v as usize]));
    assert_eq!(labels[45], community_of(&cfg, 45));
    let cfg = FcsConfig::new(200, 3.0, 20, 1.0, 2);
    let (g, labels) = generate_fcs_labeled(&cfg).unwrap();
    assert!(g
        .edges()
        .all(|(u, v, _)| labels[u as usize] != labels[v as usize]));
}

#[test]
fn fcs_mixing_fraction_tracks_mu() {
    let (g, labels) = generate_fcs_labeled(&FcsConfig::new(5000, 5.0, 50, 0.3, 3)).unwrap();
    let inter = g
        .edges()
        .filter(|&(u, v, _)| labels[u as usize] != labels[v as usize])
        .count();
    let frac = inter as f64 / g.edge_count() as f64;
    assert!((frac - 0.3).abs() < 0.03, "{frac}");
}

#[test]
fn fcs_infeasible_configs() {
    for cfg in [
        FcsConfig::new(1, 1.0, 1, 0.5, 0),
        FcsConfig::new(10, 5.0, 20, 0.5, 0),
        FcsConfig::new(10, 1.0, 5, 1.5, 0),
        FcsConfig::new(10, 0.0, 5, 0.5, 0),
        FcsConfig::new(10, 5.0, 5, 0.5, 0),
        FcsConfig::new(10, 1.0, 1, 0.0, 0),
        FcsConfig::new(10, 4.0, 10, 1.0, 0),
    ] {
        assert!(
            matches!(generate_fcs(&cfg), Err(Error::Infeasible(_))),
            "{cfg:?}"
        );
    }
}

#[test]
fn aggregation_preserves_weight_and_modularity() {
    let g = generate_fcs(&FcsConfig::new(300, 3.0, 30, 0.4, 5)).unwrap();
    let labels: Vec<u32> = (0..300u32).map(|u| (u * 7 % 13) * 3).collect();
    let agg = aggregate(&g, &labels).unwrap();
    assert_eq!(agg.graph.n(), 13);
    assert_eq!(agg.graph.total_weight(), g.total_weight());
    let q_fine = modularity_of(&g, &labels);
    let identity: Vec<u32> = (0..13).collect();
    let q_coarse = modularity_of(&agg.graph, &identity);
    assert!((q_fine - q_coarse).abs() < 1e-12);

    // any coarse partition scores the same as its pull-back
    let coarse: Vec<u32> = (0..13).map(|c| c % 4).collect();
    let pulled: Vec<u32> = agg.vertex_map.iter().map(|&c| coarse[c as usize]).collect();
    assert!((modularity_of(&agg.graph, &coarse) - modularity_of(&g, &pulled)).abs() < 1e-12);
}

#[test]
fn aggregation_numbers_by_label() {
    let g = triangle();
    let agg = aggregate(&g, &[7, 2, 7]).unwrap();
    assert_eq!(agg.vertex_map, vec![1, 0, 1]);
    assert_eq!(agg.graph.loop_weight(1), 2.0);
    assert_eq!(agg.graph.weight(0, 1), 2.0);
    assert_eq!(agg.graph.strength(1), 4.0);
    assert!(matches!(
        aggregate(&g, &[0, 0]),
        Err(Error::LabelsLength { .. })
    ));
}
