//! Runs every algorithm variant on one FCS graph and prints the classical
//! `g_Δ` count next to each estimated quantum query total.
//!
//! ```bash
//! cargo run --release --example simulate_variants -- 3000 0.5 1
//! ```

use std::time::Instant;

use qlouvain::graph::{generate_fcs, FcsConfig};
use qlouvain::sim::{simulate, Algorithm, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(1000), |s| s.parse())?;
    let mu: f64 = args.next().map_or(Ok(0.5), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(1), |s| s.parse())?;

    let g = generate_fcs(&FcsConfig::new(n, 5.0, 50, mu, seed))?;
    println!("FCS n={n} edges={} mu={mu} seed={seed}", g.edge_count());
    println!(
        "{:<11}{:>8}{:>7}{:>10}{:>14}{:>14}{:>14}{:>8}",
        "algo", "Q", "levels", "moves", "classical", "estimate", "estimate(SG)", "secs"
    );
    let cfg = SimConfig::default();
    for algo in [
        Algorithm::Ol,
        Algorithm::Ql,
        Algorithm::Sql,
        Algorithm::Eql,
        Algorithm::OlReplace,
    ] {
        let start = Instant::now();
        let run = simulate(&g, algo, seed, &cfg)?;
        let e = run.estimates;
        let (main, sg) = match algo {
            Algorithm::Ql => (e.ql, e.qlsg),
            Algorithm::Sql => (e.sql, e.sqlsg),
            Algorithm::Eql => (e.eql, f64::NAN),
            _ => (f64::NAN, f64::NAN),
        };
        println!(
            "{:<11}{:>8.4}{:>7}{:>10}{:>14}{:>14.4e}{:>14.4e}{:>8.2}",
            algo.as_str(),
            run.modularity,
            run.levels,
            run.moves,
            run.classical_calls,
            main,
            sg,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
