use proptest::prelude::*;
use qlouvain::community::{modularity_of, CommunityState, MoveState, PlainState};
use qlouvain::error::Error;
use qlouvain::graph::Graph;

/// Modularity straight from the definition over a dense matrix.
fn brute_modularity(n: usize, edges: &[(u32, u32, f64)], labels: &[u32]) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        a[u as usize][v as usize] += w;
        a[v as usize][u as usize] += w;
    }
    let s: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_w: f64 = s.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - s[i] * s[j] / two_w;
            }
        }
    }
    q / two_w
}

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(u32, u32, f64)>)> {
    (3usize..40).prop_flat_map(|n| {
        let pairs = prop::collection::vec((0..n as u32, 0..n as u32, 1u8..4), 1..(3 * n));
        (Just(n), pairs).prop_map(|(n, raw)| {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<(u32, u32, f64)> = raw
                .into_iter()
                .filter(|&(u, v, _)| u != v && seen.insert((u.min(v), u.max(v))))
                .map(|(u, v, w)| (u, v, w as f64))
                .collect();
            (n, edges)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modularity_matches_definition((n, edges) in graph_strategy(), k in 1u32..6, salt in 0u32..1000) {
        prop_assume!(!edges.is_empty());
        let g = Graph::from_edges(n, edges.clone()).unwrap();
        let labels: Vec<u32> = (0..n as u32).map(|u| (u.wrapping_mul(31) ^ salt) % k.min(n as u32)).collect();
        let q = modularity_of(&g, &labels);
        prop_assert!((q - brute_modularity(n, &edges, &labels)).abs() < 1e-12);
        let state = CommunityState::from_labels(&g, labels).unwrap();
        prop_assert!((state.modularity() - q).abs() < 1e-12);
    }

    #[test]
    fn every_gain_matches_modularity_difference((n, edges) in graph_strategy(), k in 1u32..6, salt in 0u32..1000) {
        prop_assume!(!edges.is_empty());
        let g = Graph::from_edges(n, edges.clone()).unwrap();
        let labels: Vec<u32> = (0..n as u32).map(|u| (u.wrapping_mul(17) ^ salt) % k.min(n as u32)).collect();
        let state = CommunityState::from_labels(&g, labels.clone()).unwrap();
        let q0 = brute_modularity(n, &edges, &labels);
        for u in 0..n as u32 {
            for (c, _) in state.neighbor_communities(u).collect::<Vec<_>>() {
                let d = state.audit_delta(u, c).unwrap().delta;
                let mut moved = labels.clone();
                moved[u as usize] = c;
                prop_assert!((d - (brute_modularity(n, &edges, &moved) - q0)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn random_moves_keep_state_consistent((n, edges) in graph_strategy(), picks in prop::collection::vec((0u32..40, 0usize..8), 1..60)) {
        prop_assume!(!edges.is_empty());
        let g = Graph::from_edges(n, edges.clone()).unwrap();
        let mut state = CommunityState::singleton(&g);
        for (u, j) in picks {
            let u = u % n as u32;
            let targets: Vec<u32> = state
                .neighbor_communities(u)
                .map(|(c, _)| c)
                .filter(|&c| c != state.label(u))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let t = targets[j % targets.len()];
            let before = state.modularity();
            let d = state.audit_delta(u, t).unwrap().delta;
            state.apply_move(u, t).unwrap();
            prop_assert!((state.modularity() - before - d).abs() < 1e-9);
            prop_assert!(state.audit().is_ok(), "{:?}", state.audit());
            for v in 0..n as u32 {
                prop_assert!(state.community_degree(v) <= g.degree(v));
                prop_assert!(state.delta_max() >= state.community_degree(v));
            }
        }
    }

    #[test]
    fn plain_state_agrees_with_cached((n, edges) in graph_strategy(), order in prop::collection::vec(0u32..40, 1..120)) {
        prop_assume!(!edges.is_empty());
        let g = Graph::from_edges(n, edges).unwrap();
        let mut cached = CommunityState::singleton(&g);
        let mut plain = PlainState::singleton(&g);
        for u in order {
            let u = u % n as u32;
            let a = MoveState::best_move(&cached, u);
            let b = plain.best_move(u);
            prop_assert_eq!(a.map(|m| m.target), b.map(|m| m.target));
            prop_assert_eq!(MoveState::calls(&cached), plain.calls());
            if let (Some(a), Some(b)) = (a, b) {
                prop_assert!((a.delta - b.delta).abs() < 1e-12);
                if a.delta > 0.0 {
                    cached.apply_move(u, a.target).unwrap();
                    plain.apply_move(u, b.target).unwrap();
                }
            }
        }
        prop_assert_eq!(MoveState::labels(&cached), plain.labels());
    }
}

#[test]
fn triangle_reference_values() {
    let g = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
    let mut s = CommunityState::singleton(&g);
    assert!((s.modularity() + 1.0 / 3.0).abs() < 1e-15);
    assert!((s.delta(0, 1).unwrap().delta - 1.0 / 9.0).abs() < 1e-15);
    assert_eq!(s.delta(0, 0).unwrap().delta, 0.0);
    assert_eq!(s.calls(), 2);
    s.apply_move(0, 1).unwrap();
    assert!((s.modularity() + 2.0 / 9.0).abs() < 1e-15);
    s.apply_move(2, 1).unwrap();
    assert!(s.modularity().abs() < 1e-15);
    assert!((0..3).all(|u| !s.audit_is_good(u)));
}

#[test]
fn illegal_moves_are_rejected() {
    let g = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
    let mut s = CommunityState::singleton(&g);
    assert!(matches!(
        s.delta(0, 2),
        Err(Error::IllegalMove {
            vertex: 0,
            target: 2
        })
    ));
    assert!(matches!(s.apply_move(0, 3), Err(Error::IllegalMove { .. })));
    assert!(s.apply_move(0, 0).is_err());
    assert_eq!(s.calls(), 0);
    assert!(matches!(
        CommunityState::from_labels(&g, vec![0, 0]),
        Err(Error::LabelsLength { .. })
    ));
}

#[test]
fn call_counting() {
    // star: centre 0 with leaves 1..=4
    let g = Graph::from_edges(5, (1..5).map(|v| (0, v, 1.0))).unwrap();
    let s = CommunityState::singleton(&g);
    assert_eq!(s.community_degree(0), 4);
    let m = s.best_move(0).unwrap();
    assert_eq!((m.target, s.calls()), (1, 4));
    assert!(s.is_good(0));
    assert_eq!(s.calls(), 5);
    assert_eq!(s.is_good_cost(0), 1);
    let mut good = Vec::new();
    s.for_each_good_target(0, |c| good.push(c));
    assert_eq!(good, vec![1, 2, 3, 4]);
    assert_eq!(s.calls(), 5);
}
