//! Small scaling sweep: runs OL and the quantum variants over an n-grid,
//! then fits query counts and move counts against n.
//!
//! ```bash
//! cargo run --release --example scaling_fit -- 1e3,2e3,4e3,8e3 3
//! ```

use qlouvain::harness::{fit_records, load_graphs, moves_records, run_jobs, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mut cfg = ExperimentConfig::default();
    cfg.set(
        "n_grid",
        &args.next().unwrap_or_else(|| "1e3,2e3,4e3".into()),
    )?;
    cfg.set("seeds", &args.next().unwrap_or_else(|| "3".into()))?;
    cfg.validate()?;

    let graphs = load_graphs(&cfg)?;
    let records: Vec<_> = run_jobs(&cfg, &graphs)?
        .into_iter()
        .map(|(r, _)| r)
        .collect();

    println!("{:>8} {:>8} {:>8}", "variant", "slope", "a_OL/a");
    for row in fit_records(&records)? {
        println!(
            "{:>8} {:>8.3} {:>8.3}",
            row.variant,
            row.slope,
            row.ratio.unwrap_or(f64::NAN)
        );
    }
    for row in moves_records(&records)? {
        println!("moves {:>4}: T ~ n^{:.3}", row.algo, row.exponent);
    }
    Ok(())
}
