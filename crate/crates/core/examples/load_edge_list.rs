//! Loads an edge list, runs Louvain and prints the partition as `u ℓ(u)`.
//!
//! ```bash
//! cargo run --release --example load_edge_list -- graph.txt > partition.txt
//! ```
//!
//! Without an argument a small two-clique graph is parsed from a string.

use qlouvain::graph::{load_edge_list, parse_edge_list};
use qlouvain::harness::write_partition;
use qlouvain::sim::{simulate, Algorithm, SimConfig};

const DEMO: &str = "\
# two 4-cliques joined by a weak bridge
0 1
0 2
0 3
1 2
1 3
2 3
4 5
4 6
4 7
5 6
5 7
6 7
3 4 0.5
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => load_edge_list(path)?,
        None => parse_edge_list(DEMO)?,
    };
    eprintln!(
        "n = {}, edges = {}, W = {}, max degree = {}",
        g.n(),
        g.edge_count(),
        g.total_weight(),
        g.max_degree()
    );
    let run = simulate(&g, Algorithm::Ol, 1, &SimConfig::default())?;
    eprintln!(
        "Q = {:.4} after {} moves over {} levels",
        run.modularity, run.moves, run.levels
    );
    write_partition(&run.labels, std::io::stdout().lock())?;
    Ok(())
}
