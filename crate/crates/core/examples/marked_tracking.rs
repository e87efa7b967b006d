//! Keeps the marked vertex and edge sets exact while SimpleQLouvain-style
//! moves are applied, and checks them against full rebuilds.
//!
//! ```bash
//! cargo run --example marked_tracking
//! ```

use qlouvain::community::CommunityState;
use qlouvain::graph::{generate_fcs, FcsConfig};
use qlouvain::tracker::{MarkedEdgeSet, MarkedVertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate_fcs(&FcsConfig::new(300, 3.0, 30, 0.4, 3))?;
    let mut state = CommunityState::singleton(&g);
    let mut vertices = MarkedVertexSet::build(&state);
    let mut edges = MarkedEdgeSet::build(&state);
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let mut k = 0;
    while !vertices.is_empty() {
        if k % 50 == 0 {
            println!(
                "move {k:>4}: t = {:>3} vertices, {:>4} arcs, Q = {:.4}",
                vertices.len(),
                edges.len(),
                state.modularity()
            );
        }
        let u = vertices.sample(&mut rng)?;
        let m = state.best_move(u).expect("marked vertex");
        let old = state.label(u);
        state.apply_move(u, m.target)?;
        vertices.update_after_move(&state, u, old, m.target);
        edges.update_after_move(&state, u, old, m.target);
        assert!(vertices
            .members()
            .same_members(MarkedVertexSet::build(&state).members()));
        assert!(edges
            .members()
            .same_members(MarkedEdgeSet::build(&state).members()));
        k += 1;
    }
    println!(
        "converged after {k} moves, Q = {:.4}, {} communities",
        state.modularity(),
        state.community_count()
    );
    Ok(())
}
