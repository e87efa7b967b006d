//! Modularity and move gains on a triangle with a pendant vertex.
//!
//! ```bash
//! cargo run --example modularity_basics
//! ```

use qlouvain::community::{modularity_of, CommunityState};
use qlouvain::graph::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 0-1-2 triangle, 3 hangs off 2.
    let g = Graph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (2, 3, 1.0)])?;
    let mut state = CommunityState::singleton(&g);
    println!("singletons: Q = {:.4}", state.modularity());

    for u in 0..4 {
        for (c, _) in state.neighbor_communities(u).collect::<Vec<_>>() {
            let m = state.delta(u, c)?;
            println!("  move {u} -> C{c}: gain {:+.4}", m.delta);
        }
    }

    while let Some(u) = (0..4).find(|&u| state.is_good(u)) {
        let m = state.best_move(u).expect("good vertex");
        state.apply_move(m.vertex, m.target)?;
        println!(
            "moved {} into C{} (+{:.4}), Q = {:.4}",
            m.vertex,
            m.target,
            m.delta,
            state.modularity()
        );
    }
    println!("labels {:?}, g_Δ calls {}", state.labels(), state.calls());
    assert!((state.modularity() - modularity_of(&g, state.labels())).abs() < 1e-12);
    Ok(())
}
