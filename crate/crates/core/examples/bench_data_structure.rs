//! Wall time and memory of OL with and without the community adjacency
//! lists on the same seeds.
//!
//! ```bash
//! cargo run --release --example bench_data_structure -- 1e4 5
//! ```

use qlouvain::harness::{bench_ds, load_graphs, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mut cfg = ExperimentConfig::default();
    cfg.set("n_grid", &args.next().unwrap_or_else(|| "1e4".into()))?;
    cfg.set("seeds", &args.next().unwrap_or_else(|| "5".into()))?;
    cfg.validate()?;

    let report = bench_ds(&cfg, &load_graphs(&cfg)?)?;
    for r in &report.rows {
        println!(
            "{} cache={:<5} {:>8.4} s  {:>10} B  Q={:.4}",
            r.graph, r.cache, r.wall_s, r.memory_bytes, r.modularity
        );
    }
    println!(
        "mean: cached {:.4} s / {:.0} B, uncached {:.4} s / {:.0} B, identical partitions: {}",
        report.mean_wall_cached,
        report.mean_memory_cached,
        report.mean_wall_uncached,
        report.mean_memory_uncached,
        report.identical_partitions
    );
    Ok(())
}
