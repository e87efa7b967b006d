use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qlouvain::error::Error;
use qlouvain::harness::{self, ExperimentConfig, GraphSource, RESULTS_FILE};

/// Louvain community detection with query-count simulation of its
/// Grover-search variants.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write FCS edge lists, one per (mu, n, seed).
    Generate(Common),
    /// Run algorithms and write results.csv and summary.csv.
    Run(Common),
    /// Weighted log-log fit of query counts per variant.
    Fit(Report),
    /// Time ol with and without community adjacency lists.
    BenchDs(Common),
    /// Fit of the move count against n.
    MovesReport(Report),
}

#[derive(Args)]
struct Common {
    /// Flat key = value experiment file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge-list file to use instead of generated graphs (repeatable).
    #[arg(long)]
    graph: Vec<PathBuf>,
    /// Comma-separated algorithms: ol, ol-replace, ql, sql, eql.
    #[arg(long)]
    algo: Option<String>,
    /// `k` for seeds 1..=k, `a..b`, or a comma list.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated vertex counts, e.g. `1e3,3e3,1e4`.
    #[arg(long)]
    n_grid: Option<String>,
    /// Run ol without the community adjacency lists.
    #[arg(long)]
    no_cache: bool,
    /// Switch classical sampling off by threshold instead of simulated draws.
    #[arg(long)]
    deterministic_nsamples: bool,
}

#[derive(Args)]
struct Report {
    /// Results CSV; defaults to `<out>/results.csv`.
    results: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if !self.graph.is_empty() {
            cfg.source = GraphSource::Files(self.graph.clone());
        }
        let overrides = [
            ("algos", &self.algo),
            ("seeds", &self.seeds),
            ("n_grid", &self.n_grid),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if let Some(out) = &self.out {
            cfg.out.clone_from(out);
        }
        cfg.use_cache &= !self.no_cache;
        cfg.deterministic_nsamples |= self.deterministic_nsamples;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl Report {
    fn paths(&self) -> Result<(PathBuf, PathBuf), Error> {
        let mut out = match &self.config {
            Some(path) => ExperimentConfig::load(path)?.out,
            None => ExperimentConfig::default().out,
        };
        if let Some(o) = &self.out {
            out.clone_from(o);
        }
        let results = self
            .results
            .clone()
            .unwrap_or_else(|| out.join(RESULTS_FILE));
        Ok((results, out))
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.3}"))
}

fn execute(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Generate(c) => {
            let files = harness::cmd_generate(&c.config()?)?;
            println!("wrote {} edge lists", files.len());
        }
        Command::Run(c) => {
            let cfg = c.config()?;
            let report = harness::cmd_run(&cfg)?;
            println!(
                "wrote {} runs to {}",
                report.records.len(),
                cfg.out.display()
            );
            if report.timed_out {
                eprintln!("some runs hit the time limit; their rows are partial");
                return Ok(ExitCode::from(3));
            }
        }
        Command::Fit(r) => {
            let (results, out) = r.paths()?;
            println!(
                "{:>6} {:>6} {:>6} {:>12} {:>3} {:>8} {:>8}",
                "d", "S", "mu", "variant", "pts", "slope", "ratio"
            );
            for row in harness::cmd_fit(&results, &out)? {
                println!(
                    "{:>6} {:>6} {:>6} {:>12} {:>3} {:>8.3} {:>8}",
                    opt(row.d),
                    opt(row.community_size.map(|s| s as f64)),
                    opt(row.mu),
                    row.variant,
                    row.points,
                    row.slope,
                    opt(row.ratio)
                );
            }
        }
        Command::BenchDs(c) => {
            let cfg = c.config()?;
            let b = harness::cmd_bench_ds(&cfg)?;
            println!(
                "mean wall time: cached {:.4} s, uncached {:.4} s",
                b.mean_wall_cached, b.mean_wall_uncached
            );
            println!(
                "mean memory proxy: cached {:.0} B, uncached {:.0} B",
                b.mean_memory_cached, b.mean_memory_uncached
            );
            println!("identical partitions: {}", b.identical_partitions);
        }
        Command::MovesReport(r) => {
            let (results, out) = r.paths()?;
            for row in harness::cmd_moves_report(&results, &out)? {
                println!(
                    "d={} S={} mu={} {:>10}: T ~ n^{:.3} over {} points",
                    opt(row.d),
                    opt(row.community_size.map(|s| s as f64)),
                    opt(row.mu),
                    row.algo,
                    row.exponent,
                    row.points
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::UnknownAlgorithm(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
