use qlouvain::community::CommunityState;
use qlouvain::graph::{generate_fcs, FcsConfig, Graph};
use qlouvain::tracker::{ChangeScope, MarkedEdgeSet, MarkedVertexSet, SampleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for _ in 0..(2 * n) {
        let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v, rng.gen_range(1..4) as f64));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random improving and non-improving moves, checked against rebuilds.
#[test]
fn incremental_sets_match_rebuilds_under_arbitrary_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..20 {
        let g = random_graph(&mut rng, 30 + case * 3);
        let mut state = CommunityState::singleton(&g);
        let mut vs = MarkedVertexSet::build(&state);
        let mut es = MarkedEdgeSet::build(&state);
        for _ in 0..80 {
            let u = rng.gen_range(0..g.n() as u32);
            let targets: Vec<u32> = state
                .neighbor_communities(u)
                .map(|(c, _)| c)
                .filter(|&c| c != state.label(u))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let t = targets[rng.gen_range(0..targets.len())];
            let old = state.label(u);
            state.apply_move(u, t).unwrap();
            vs.update_after_move(&state, u, old, t);
            es.update_after_move(&state, u, old, t);
            assert!(vs
                .members()
                .same_members(MarkedVertexSet::build(&state).members()));
            assert!(es
                .members()
                .same_members(MarkedEdgeSet::build(&state).members()));
        }
    }
}

#[test]
fn edge_set_semantics() {
    let g = generate_fcs(&FcsConfig::new(120, 2.0, 12, 0.3, 4)).unwrap();
    let labels: Vec<u32> = (0..120).map(|u| u / 12 * 12).collect();
    let state = CommunityState::from_labels(&g, labels).unwrap();
    let es = MarkedEdgeSet::build(&state);
    let vs = MarkedVertexSet::build(&state);
    for a in 0..g.arc_count() {
        let (w, v) = (g.arc_source(a), g.arc_target(a));
        let lv = state.label(v);
        let marked = lv != state.label(w) && state.audit_delta(w, lv).unwrap().delta > 0.0;
        assert_eq!(es.contains_arc(a), marked, "arc {w}->{v}");
        if marked {
            assert!(vs.contains(w));
        }
    }
    assert_eq!(state.calls(), 0);
}

#[test]
fn change_scope_covers_both_communities_and_neighbours() {
    let g = Graph::from_edges(
        6,
        [
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 3, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
        ],
    )
    .unwrap();
    let mut state = CommunityState::from_labels(&g, vec![0, 0, 2, 2, 4, 4]).unwrap();
    state.apply_move(2, 0).unwrap();
    let mut scope = ChangeScope::new(6);
    let mut got = scope.collect(&state, 2, 2, 0).to_vec();
    got.sort_unstable();
    // C_0 = {0,1,2}, C_2 = {3}; neighbours add 4.
    assert_eq!(got, vec![0, 1, 2, 3, 4]);
}

#[test]
fn sampling_is_uniform() {
    let mut s = SampleSet::new(10);
    for x in [1, 4, 6, 9] {
        s.set(x, true);
    }
    s.set(4, false);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut counts = [0u32; 10];
    for _ in 0..30_000 {
        counts[s.sample(&mut rng).unwrap() as usize] += 1;
    }
    assert_eq!(counts[4], 0);
    for x in [1, 6, 9] {
        assert!((counts[x] as f64 - 10_000.0).abs() < 400.0, "{counts:?}");
    }
}
