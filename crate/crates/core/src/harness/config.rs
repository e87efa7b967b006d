//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # FCS sweep
//! n_grid = 1000, 3000, 10000
//! d = 5
//! community_size = 50
//! mu = 0.3, 0.5, 0.7
//! seeds = 10            # or `1..10`, or `3, 7, 11`
//! algos = ol, ql, sql, eql
//! out = results
//! eps_total = 1e-5
//! ```
//!
//! Blank lines and text after `#` are ignored. Unknown keys are errors.
//! `graphs = a.txt, b.txt` replaces the generator with edge-list files.

use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::error::{Error, Result};
use crate::graph::FcsConfig;
use crate::qcost::CostParams;
use crate::sim::{Algorithm, ScanCharge, SimConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    /// FCS graphs for every `(μ, n, seed)`; the run seed doubles as the
    /// generator seed.
    Fcs {
        n_grid: Vec<usize>,
        avg_degree: f64,
        community_size: usize,
        mus: Vec<f64>,
    },
    Files(Vec<PathBuf>),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: GraphSource,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub params: CostParams,
    pub out: PathBuf,
    pub deterministic_nsamples: bool,
    pub use_cache: bool,
    pub scan_charge: ScanCharge,
    /// Per-run wall-clock cap.
    pub time_limit: Duration,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Write one ledger CSV per run under `out/ledgers`.
    pub ledgers: bool,
    /// Write one partition dump per run under `out/partitions`.
    pub partitions: bool,
    /// Timed repetitions per seed and variant in `bench-ds`.
    pub bench_reps: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            source: GraphSource::Fcs {
                n_grid: vec![1000, 3000, 10000],
                avg_degree: 5.0,
                community_size: 50,
                mus: vec![0.5],
            },
            algorithms: vec![Algorithm::Ol, Algorithm::Ql, Algorithm::Sql, Algorithm::Eql],
            seeds: (1..=10).collect(),
            params: CostParams::default(),
            out: PathBuf::from("out"),
            deterministic_nsamples: false,
            use_cache: true,
            scan_charge: ScanCharge::EarlyExit,
            time_limit: Duration::from_secs(3600),
            threads: 0,
            ledgers: false,
            partitions: false,
            bench_reps: 5,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies one setting. Shared by the file parser and CLI overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n_grid" => self.fcs_mut()?.0.clone_from(&parse_n_grid(value)?),
            "d" | "avg_degree" => *self.fcs_mut()?.1 = num(key, value)?,
            "S" | "community_size" => *self.fcs_mut()?.2 = num(key, value)?,
            "mu" => *self.fcs_mut()?.3 = list(value, |s| num("mu", s))?,
            "graphs" => self.source = GraphSource::Files(list(value, |s| Ok(PathBuf::from(s)))?),
            "seeds" => self.seeds = parse_seeds(value)?,
            "algos" | "algorithms" => self.algorithms = list(value, str::parse)?,
            "out" => self.out = PathBuf::from(value),
            "alpha" => self.params.alpha = num(key, value)?,
            "cq" => self.params.cq = num(key, value)?,
            "eps_total" => self.params.eps_total = num(key, value)?,
            "lswitch" => self.params.lswitch = num(key, value)?,
            "nsamples_init" => self.params.nsamples_init = num(key, value)?,
            "log_base" => self.params.log_base = num(key, value)?,
            "deterministic_nsamples" => self.deterministic_nsamples = num(key, value)?,
            "use_cache" => self.use_cache = num(key, value)?,
            "scan_charge" => {
                self.scan_charge = match value {
                    "early-exit" => ScanCharge::EarlyExit,
                    "oracle" => ScanCharge::Oracle,
                    _ => {
                        return Err(Error::Config(format!(
                            "scan_charge: `{value}` is not early-exit or oracle"
                        )))
                    }
                }
            }
            "time_limit_secs" => self.time_limit = Duration::from_secs_f64(num(key, value)?),
            "threads" => self.threads = num(key, value)?,
            "ledgers" => self.ledgers = num(key, value)?,
            "partitions" => self.partitions = num(key, value)?,
            "bench_reps" => self.bench_reps = num(key, value)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    fn fcs_mut(&mut self) -> Result<(&mut Vec<usize>, &mut f64, &mut usize, &mut Vec<f64>)> {
        match &mut self.source {
            GraphSource::Fcs {
                n_grid,
                avg_degree,
                community_size,
                mus,
            } => Ok((n_grid, avg_degree, community_size, mus)),
            GraphSource::Files(_) => Err(Error::Config(
                "generator keys given together with `graphs`".into(),
            )),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("at least one algorithm is required".into()));
        }
        if !(self.params.eps_total > 0.0 && self.params.eps_total < 1.0) {
            return Err(Error::Config(format!(
                "eps_total = {} outside (0, 1)",
                self.params.eps_total
            )));
        }
        if !(self.params.log_base > 1.0) {
            return Err(Error::Config(format!(
                "log_base = {} must exceed 1",
                self.params.log_base
            )));
        }
        match &self.source {
            GraphSource::Fcs { n_grid, mus, .. } => {
                if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Config(
                        "n_grid must be non-empty and strictly increasing".into(),
                    ));
                }
                if mus.is_empty() {
                    return Err(Error::Config("at least one mu is required".into()));
                }
            }
            GraphSource::Files(paths) if paths.is_empty() => {
                return Err(Error::Config("`graphs` lists no files".into()));
            }
            GraphSource::Files(_) => {}
        }
        Ok(())
    }

    /// FCS configurations in output order: μ, then n, then seed.
    pub fn fcs_configs(&self) -> Vec<FcsConfig> {
        let GraphSource::Fcs {
            n_grid,
            avg_degree,
            community_size,
            mus,
        } = &self.source
        else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for &mu in mus {
            for &n in n_grid {
                for &seed in &self.seeds {
                    out.push(FcsConfig::new(n, *avg_degree, *community_size, mu, seed));
                }
            }
        }
        out
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            params: self.params.clone(),
            deterministic_nsamples: self.deterministic_nsamples,
            use_cache: self.use_cache,
            time_limit: Some(self.time_limit),
            scan_charge: self.scan_charge,
            ..SimConfig::default()
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse `{value}`")))
}

fn list<T>(value: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(f)
        .collect()
}

/// Accepts `1000, 3000` and scientific forms such as `1e4` or `3e4`.
pub fn parse_n_grid(value: &str) -> Result<Vec<usize>> {
    list(value, |s| {
        let x: f64 = num("n_grid", s)?;
        if x < 1.0 || x.fract() != 0.0 || x > usize::MAX as f64 {
            return Err(Error::Config(format!(
                "n_grid: `{s}` is not a positive integer"
            )));
        }
        Ok(x as usize)
    })
}

/// `k` means seeds `1..=k`; `a..b` is inclusive; otherwise a comma list.
pub fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    let value = value.trim();
    if let Some((a, b)) = value.split_once("..") {
        let (a, b): (u64, u64) = (num("seeds", a)?, num("seeds", b)?);
        if a > b {
            return Err(Error::Config(format!("seeds: empty range `{value}`")));
        }
        return Ok((a..=b).collect());
    }
    if !value.contains(',') {
        let k: u64 = num("seeds", value)?;
        return Ok((1..=k).collect());
    }
    list(value, |s| num("seeds", s))
}
