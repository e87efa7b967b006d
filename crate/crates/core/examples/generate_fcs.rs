//! Generates an FCS benchmark graph and reports how well its planted
//! communities score.
//!
//! ```bash
//! cargo run --example generate_fcs -- 2000 0.3 7 fcs.txt
//! ```

use std::fs::File;
use std::io::BufWriter;

use qlouvain::community::modularity_of;
use qlouvain::graph::{generate_fcs_labeled, write_edge_list, FcsConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(2000), |s| s.parse())?;
    let mu: f64 = args.next().map_or(Ok(0.3), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(7), |s| s.parse())?;
    let out = args.next();

    let cfg = FcsConfig::new(n, 5.0, 50, mu, seed);
    let (g, planted) = generate_fcs_labeled(&cfg)?;
    let inter = g
        .edges()
        .filter(|&(u, v, _)| planted[u as usize] != planted[v as usize])
        .count();
    println!("{}", cfg.header());
    println!(
        "edges {} (target {}), mean degree {:.2}",
        g.edge_count(),
        cfg.edge_target(),
        2.0 * g.total_weight() / n as f64
    );
    println!(
        "inter-community fraction {:.3}",
        inter as f64 / g.edge_count() as f64
    );
    println!("Q(planted) = {:.4}", modularity_of(&g, &planted));

    if let Some(path) = out {
        write_edge_list(
            &g,
            BufWriter::new(File::create(&path)?),
            Some(&cfg.header()),
        )?;
        println!("wrote {path}");
    }
    Ok(())
}
