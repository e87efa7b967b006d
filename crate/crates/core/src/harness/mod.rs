//! Experiment sweeps behind the `qlouvain` binary: graph generation, runs,
//! fits, the data-structure benchmark and the move-count report.
//!
//! Every command writes tidy CSV into the configured output directory.
//! Runs execute on a rayon pool but results are collected in job order, so
//! all CSV except wall-clock columns is byte-identical across reruns.

mod config;
mod fit;

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{parse_n_grid, parse_seeds, ExperimentConfig, GraphSource};
pub use fit::{mean_std, weighted_loglog_fit, LogLogFit};

use crate::error::{Error, Result};
use crate::graph::{generate_fcs, load_edge_list_with_meta, write_edge_list, FcsConfig, Graph};
use crate::sim::{simulate, Algorithm, RunOutcome, SimConfig};

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const FIT_FILE: &str = "fit.csv";
pub const MOVES_FILE: &str = "moves_report.csv";
pub const BENCH_FILE: &str = "bench_ds.csv";

/// One `(graph, seed, algorithm)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub d: Option<f64>,
    #[serde(rename = "S")]
    pub community_size: Option<usize>,
    pub mu: Option<f64>,
    pub seed: u64,
    pub algo: String,
    pub levels: usize,
    pub moves: u64,
    pub modularity: f64,
    pub classical_calls: u64,
    pub est_ql: Option<f64>,
    pub est_qlsg: Option<f64>,
    pub est_sql: Option<f64>,
    pub est_sqlsg: Option<f64>,
    pub est_eql: Option<f64>,
    pub budget_exceeded: bool,
    pub timed_out: bool,
}

/// Graph family: the generator parameters other than `n` and the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Family {
    pub d: Option<f64>,
    pub community_size: Option<usize>,
    pub mu: Option<f64>,
}

impl Family {
    fn key(&self) -> (Option<u64>, Option<usize>, Option<u64>) {
        (
            self.d.map(f64::to_bits),
            self.community_size,
            self.mu.map(f64::to_bits),
        )
    }
}

impl RunRecord {
    pub fn family(&self) -> Family {
        Family {
            d: self.d,
            community_size: self.community_size,
            mu: self.mu,
        }
    }

    /// Query counts this run reports, keyed by variant name.
    pub fn variant_costs(&self) -> Vec<(&'static str, f64)> {
        let est = [
            ("ql", self.est_ql),
            ("qlsg", self.est_qlsg),
            ("sql", self.est_sql),
            ("sqlsg", self.est_sqlsg),
            ("eql", self.est_eql),
        ];
        let mut out: Vec<(&'static str, f64)> = est
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect();
        match self.algo.as_str() {
            "ol" => out.insert(0, ("ol", self.classical_calls as f64)),
            "ol-replace" => out.insert(0, ("ol-replace", self.classical_calls as f64)),
            _ => {}
        }
        out
    }
}

/// Mean and sample standard deviation of one metric over the seeds of a grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub d: Option<f64>,
    #[serde(rename = "S")]
    pub community_size: Option<usize>,
    pub mu: Option<f64>,
    pub n: usize,
    pub algo: String,
    pub runs: usize,
    pub metric: String,
    pub mean: f64,
    pub std: f64,
}

/// Slope of one variant's queries against `n` within one graph family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRow {
    pub d: Option<f64>,
    #[serde(rename = "S")]
    pub community_size: Option<usize>,
    pub mu: Option<f64>,
    pub variant: String,
    pub points: usize,
    pub slope: f64,
    pub intercept: f64,
    /// `a_OL / a_variant`, absent without `ol` runs in the family.
    pub ratio: Option<f64>,
    /// Per-point residuals in increasing `n`, separated by `;`.
    pub residuals: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MovesRow {
    pub d: Option<f64>,
    #[serde(rename = "S")]
    pub community_size: Option<usize>,
    pub mu: Option<f64>,
    pub algo: String,
    pub points: usize,
    pub exponent: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub graph: String,
    pub n: usize,
    pub seed: u64,
    pub cache: bool,
    pub wall_s: f64,
    pub moves: u64,
    pub modularity: f64,
    pub memory_bytes: usize,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub mean_wall_cached: f64,
    pub mean_wall_uncached: f64,
    pub mean_memory_cached: f64,
    pub mean_memory_uncached: f64,
    /// Every seed produced the same partition with and without the cache.
    pub identical_partitions: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub timed_out: bool,
}

/// A loaded or generated input graph, tagged for output.
#[derive(Debug, Clone)]
pub struct GraphJob {
    pub name: String,
    pub graph: Graph,
    pub family: Family,
    pub seed: u64,
}

fn fcs_name(c: &FcsConfig) -> String {
    format!(
        "fcs_n{}_d{}_S{}_mu{}_seed{}",
        c.n, c.avg_degree, c.community_size, c.mu, c.seed
    )
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Materializes every input graph in output order.
pub fn load_graphs(cfg: &ExperimentConfig) -> Result<Vec<GraphJob>> {
    match &cfg.source {
        GraphSource::Fcs { .. } => {
            let configs = cfg.fcs_configs();
            with_pool(cfg.threads, || {
                configs
                    .par_iter()
                    .map(|c| {
                        Ok(GraphJob {
                            name: fcs_name(c),
                            graph: generate_fcs(c)?,
                            family: Family {
                                d: Some(c.avg_degree),
                                community_size: Some(c.community_size),
                                mu: Some(c.mu),
                            },
                            seed: c.seed,
                        })
                    })
                    .collect()
            })?
        }
        GraphSource::Files(paths) => {
            let mut jobs = Vec::new();
            for path in paths {
                let (graph, meta) = load_edge_list_with_meta(path)?;
                let name = path.file_stem().map_or_else(
                    || path.display().to_string(),
                    |s| s.to_string_lossy().into_owned(),
                );
                let family = Family {
                    d: meta.fcs.as_ref().map(|f| f.avg_degree),
                    community_size: meta.fcs.as_ref().map(|f| f.community_size),
                    mu: meta.fcs.as_ref().map(|f| f.mu),
                };
                for &seed in &cfg.seeds {
                    jobs.push(GraphJob {
                        name: name.clone(),
                        graph: graph.clone(),
                        family,
                        seed,
                    });
                }
            }
            Ok(jobs)
        }
    }
}

/// Writes one edge list per `(μ, n, seed)`. Nothing is left on disk if any
/// graph fails to generate or write.
pub fn cmd_generate(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let configs = cfg.fcs_configs();
    if configs.is_empty() {
        return Err(Error::Config(
            "generate needs generator settings, not `graphs`".into(),
        ));
    }
    let graphs: Vec<(String, Graph, String)> = with_pool(cfg.threads, || {
        configs
            .par_iter()
            .map(|c| Ok((fcs_name(c), generate_fcs(c)?, c.header())))
            .collect::<Result<Vec<_>>>()
    })??;
    fs::create_dir_all(&cfg.out).map_err(|e| Error::file(&cfg.out, e))?;
    let mut written = Vec::new();
    for (name, g, header) in &graphs {
        let path = cfg.out.join(format!("{name}.txt"));
        if let Err(e) = write_atomic(&path, |w| write_edge_list(g, w, Some(header))) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(e);
        }
        written.push(path);
    }
    Ok(written)
}

/// Writes through a sibling temporary file and renames it into place.
fn write_atomic(path: &Path, f: impl FnOnce(&mut BufWriter<fs::File>) -> Result<()>) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let result = (|| {
        let file = fs::File::create(&tmp).map_err(|e| Error::file(&tmp, e))?;
        let mut w = BufWriter::new(file);
        f(&mut w)?;
        w.flush().map_err(|e| Error::file(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::file(path, e))
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn record_of(job: &GraphJob, out: &RunOutcome) -> RunRecord {
    let e = out.estimates;
    let (ql, sql, eql) = match out.algo {
        Algorithm::Ql => (true, false, false),
        Algorithm::Sql => (false, true, false),
        Algorithm::Eql => (false, false, true),
        Algorithm::Ol | Algorithm::OlReplace => (false, false, false),
    };
    let pick = |on: bool, v: f64| on.then_some(v);
    RunRecord {
        graph: job.name.clone(),
        n: job.graph.n(),
        edges: job.graph.edge_count(),
        d: job.family.d,
        community_size: job.family.community_size,
        mu: job.family.mu,
        seed: job.seed,
        algo: out.algo.to_string(),
        levels: out.levels,
        moves: out.moves,
        modularity: out.modularity,
        classical_calls: out.classical_calls,
        est_ql: pick(ql, e.ql),
        est_qlsg: pick(ql, e.qlsg),
        est_sql: pick(sql, e.sql),
        est_sqlsg: pick(sql, e.sqlsg),
        est_eql: pick(eql, e.eql),
        budget_exceeded: out.budget_exceeded,
        timed_out: out.timed_out,
    }
}

/// Runs every configured algorithm on every input graph.
pub fn run_jobs(
    cfg: &ExperimentConfig,
    graphs: &[GraphJob],
) -> Result<Vec<(RunRecord, RunOutcome)>> {
    let sim = SimConfig {
        record_moves: cfg.ledgers,
        ..cfg.sim_config()
    };
    let jobs: Vec<(&GraphJob, Algorithm)> = graphs
        .iter()
        .flat_map(|g| cfg.algorithms.iter().map(move |&a| (g, a)))
        .collect();
    with_pool(cfg.threads, || {
        jobs.par_iter()
            .map(|&(job, algo)| {
                let out = simulate(&job.graph, algo, job.seed, &sim)?;
                Ok((record_of(job, &out), out))
            })
            .collect()
    })?
}

/// `run`: results and per-point summary CSVs, plus optional ledgers and
/// partition dumps.
pub fn cmd_run(cfg: &ExperimentConfig) -> Result<RunReport> {
    let graphs = load_graphs(cfg)?;
    let runs = run_jobs(cfg, &graphs)?;
    fs::create_dir_all(&cfg.out).map_err(|e| Error::file(&cfg.out, e))?;
    for (dir, enabled) in [("ledgers", cfg.ledgers), ("partitions", cfg.partitions)] {
        if !enabled {
            continue;
        }
        let dir = cfg.out.join(dir);
        fs::create_dir_all(&dir).map_err(|e| Error::file(&dir, e))?;
        for (r, out) in &runs {
            let stem = format!("{}_{}_seed{}", r.graph, r.algo, r.seed);
            if dir.ends_with("ledgers") {
                write_atomic(&dir.join(format!("{stem}.csv")), |w| {
                    out.ledger.write_csv(w)
                })?;
            } else {
                write_atomic(&dir.join(format!("{stem}.txt")), |w| {
                    write_partition(&out.labels, w)
                })?;
            }
        }
    }
    let records: Vec<RunRecord> = runs.into_iter().map(|(r, _)| r).collect();
    let summary = summarize(&records);
    write_csv(&cfg.out.join(RESULTS_FILE), &records)?;
    write_csv(&cfg.out.join(SUMMARY_FILE), &summary)?;
    Ok(RunReport {
        timed_out: records.iter().any(|r| r.timed_out),
        records,
        summary,
    })
}

/// Partition dump: one `u ℓ(u)` line per vertex.
pub fn write_partition<W: Write>(labels: &[u32], mut out: W) -> Result<()> {
    for (u, l) in labels.iter().enumerate() {
        writeln!(out, "{u} {l}")?;
    }
    Ok(())
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    write_atomic(path, |w| {
        let mut csv = csv::Writer::from_writer(w);
        for r in rows {
            csv.serialize(r)?;
        }
        csv.flush()?;
        Ok(())
    })
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let file = fs::File::open(path).map_err(|e| Error::file(path, e))?;
    csv::Reader::from_reader(file)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// Groups rows by `key` in first-seen order.
fn group_by<'r, K: Eq + std::hash::Hash>(
    rows: &'r [RunRecord],
    key: impl Fn(&RunRecord) -> K,
) -> Vec<Vec<&'r RunRecord>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut groups: Vec<Vec<&RunRecord>> = Vec::new();
    for r in rows {
        let i = *index.entry(key(r)).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[i].push(r);
    }
    groups
}

pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut out = Vec::new();
    for group in group_by(records, |r| (r.family().key(), r.n, r.algo.clone())) {
        let first = group[0];
        let mut metrics: Vec<(String, Vec<f64>)> = vec![
            (
                "moves".into(),
                group.iter().map(|r| r.moves as f64).collect(),
            ),
            (
                "modularity".into(),
                group.iter().map(|r| r.modularity).collect(),
            ),
            (
                "classical_calls".into(),
                group.iter().map(|r| r.classical_calls as f64).collect(),
            ),
        ];
        for (name, _) in first.variant_costs() {
            if matches!(name, "ol" | "ol-replace") {
                continue;
            }
            let values = group
                .iter()
                .filter_map(|r| {
                    r.variant_costs()
                        .into_iter()
                        .find(|(k, _)| *k == name)
                        .map(|(_, v)| v)
                })
                .collect();
            metrics.push((format!("est_{name}"), values));
        }
        for (metric, values) in metrics {
            let (mean, std) = mean_std(&values);
            out.push(SummaryRow {
                d: first.family().d,
                community_size: first.family().community_size,
                mu: first.family().mu,
                n: first.n,
                algo: first.algo.clone(),
                runs: values.len(),
                metric,
                mean,
                std,
            });
        }
    }
    out
}

/// Means of `value` per distinct `n`, in increasing `n`.
fn means_by_n(
    rows: &[&RunRecord],
    value: impl Fn(&RunRecord) -> Option<f64>,
) -> (Vec<f64>, Vec<f64>) {
    let mut by_n: Vec<(usize, Vec<f64>)> = Vec::new();
    for r in rows {
        let Some(v) = value(r) else { continue };
        match by_n.iter_mut().find(|(n, _)| *n == r.n) {
            Some((_, vs)) => vs.push(v),
            None => by_n.push((r.n, vec![v])),
        }
    }
    by_n.sort_by_key(|(n, _)| *n);
    by_n.into_iter()
        .map(|(n, vs)| (n as f64, mean_std(&vs).0))
        .unzip()
}

/// Weighted log-log slope of every variant's mean query count per family.
pub fn fit_records(records: &[RunRecord]) -> Result<Vec<FitRow>> {
    let mut out = Vec::new();
    for family in group_by(records, |r| r.family().key()) {
        let mut variants: Vec<&'static str> = Vec::new();
        for r in &family {
            for (v, _) in r.variant_costs() {
                if !variants.contains(&v) {
                    variants.push(v);
                }
            }
        }
        let mut fits = Vec::new();
        for v in variants {
            let (ns, qs) = means_by_n(&family, |r| {
                r.variant_costs()
                    .into_iter()
                    .find(|(k, _)| *k == v)
                    .map(|(_, q)| q)
            });
            fits.push((v, ns.len(), weighted_loglog_fit(&ns, &qs)?));
        }
        let baseline = fits
            .iter()
            .find(|(v, ..)| *v == "ol")
            .map(|(_, _, f)| f.slope);
        for (v, points, fit) in fits {
            out.push(FitRow {
                d: family[0].family().d,
                community_size: family[0].family().community_size,
                mu: family[0].family().mu,
                variant: v.to_string(),
                points,
                slope: fit.slope,
                intercept: fit.intercept,
                ratio: baseline.map(|a| a / fit.slope),
                residuals: fit
                    .residuals
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
            });
        }
    }
    Ok(out)
}

/// Exponent of the mean move count `T` against `n` per family and algorithm.
pub fn moves_records(records: &[RunRecord]) -> Result<Vec<MovesRow>> {
    let mut out = Vec::new();
    for group in group_by(records, |r| (r.family().key(), r.algo.clone())) {
        let (ns, ts) = means_by_n(&group, |r| Some(r.moves as f64));
        let fit = weighted_loglog_fit(&ns, &ts)?;
        out.push(MovesRow {
            d: group[0].family().d,
            community_size: group[0].family().community_size,
            mu: group[0].family().mu,
            algo: group[0].algo.clone(),
            points: ns.len(),
            exponent: fit.slope,
            intercept: fit.intercept,
        });
    }
    Ok(out)
}

/// `fit`: reads a results CSV and writes `fit.csv` next to `out`.
pub fn cmd_fit(results: &Path, out: &Path) -> Result<Vec<FitRow>> {
    let rows = fit_records(&read_records(results)?)?;
    fs::create_dir_all(out).map_err(|e| Error::file(out, e))?;
    write_csv(&out.join(FIT_FILE), &rows)?;
    Ok(rows)
}

/// `moves-report`: reads a results CSV and writes `moves_report.csv`.
pub fn cmd_moves_report(results: &Path, out: &Path) -> Result<Vec<MovesRow>> {
    let rows = moves_records(&read_records(results)?)?;
    fs::create_dir_all(out).map_err(|e| Error::file(out, e))?;
    write_csv(&out.join(MOVES_FILE), &rows)?;
    Ok(rows)
}

/// Times `ol` with and without community adjacency lists on identical
/// seeds, keeping the fastest of `bench_reps` repetitions. Runs are
/// sequential so that timings do not compete for cores.
pub fn bench_ds(cfg: &ExperimentConfig, graphs: &[GraphJob]) -> Result<BenchReport> {
    let mut rows = Vec::new();
    let mut identical = true;
    for job in graphs {
        let mut best = [f64::INFINITY; 2];
        let mut outs = Vec::new();
        // alternate the two variants so drift in machine load hits both
        for _ in 0..cfg.bench_reps.max(1) {
            outs.clear();
            for (i, cache) in [true, false].into_iter().enumerate() {
                let sim = SimConfig {
                    use_cache: cache,
                    ..cfg.sim_config()
                };
                let start = Instant::now();
                let out = simulate(&job.graph, Algorithm::Ol, job.seed, &sim)?;
                best[i] = best[i].min(start.elapsed().as_secs_f64());
                outs.push(out);
            }
        }
        for (i, out) in outs.iter().enumerate() {
            rows.push(BenchRow {
                graph: job.name.clone(),
                n: job.graph.n(),
                seed: job.seed,
                cache: i == 0,
                wall_s: best[i],
                moves: out.moves,
                modularity: out.modularity,
                memory_bytes: out.memory_bytes,
            });
        }
        identical &= outs[0].labels == outs[1].labels;
    }
    let mean_of = |cache: bool, f: fn(&BenchRow) -> f64| {
        mean_std(
            &rows
                .iter()
                .filter(|r| r.cache == cache)
                .map(f)
                .collect::<Vec<_>>(),
        )
        .0
    };
    Ok(BenchReport {
        mean_wall_cached: mean_of(true, |r| r.wall_s),
        mean_wall_uncached: mean_of(false, |r| r.wall_s),
        mean_memory_cached: mean_of(true, |r| r.memory_bytes as f64),
        mean_memory_uncached: mean_of(false, |r| r.memory_bytes as f64),
        identical_partitions: identical,
        rows,
    })
}

/// `bench-ds`: writes `bench_ds.csv`. Its `wall_s` column is the only
/// output of the harness that varies between reruns.
pub fn cmd_bench_ds(cfg: &ExperimentConfig) -> Result<BenchReport> {
    let graphs = load_graphs(cfg)?;
    let report = bench_ds(cfg, &graphs)?;
    fs::create_dir_all(&cfg.out).map_err(|e| Error::file(&cfg.out, e))?;
    write_csv(&cfg.out.join(BENCH_FILE), &report.rows)?;
    Ok(report)
}
