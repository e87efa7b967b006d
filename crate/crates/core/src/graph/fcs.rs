//! Fixed-community-size (FCS) random benchmark graphs.
//!
//! Vertices are split into `⌈n/S⌉` consecutive blocks of size `S` (the last
//! block takes the remainder). Exactly `⌈⟨d⟩·n⌉` distinct edges are drawn:
//! pick a block uniformly, a vertex `u` in it uniformly, and a partner
//! inside the block with probability `1 − μ` or outside it with probability
//! `μ`. Draws that hit an existing edge (or `u` itself) are rejected and do
//! not count. Note that `⟨d⟩·n` edges give a mean degree of `2⟨d⟩`.
//!
//! Randomness comes from `ChaCha8Rng` seeded with [`FcsConfig::seed`].

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FcsConfig {
    pub n: usize,
    /// Edges per vertex; the generator inserts `⌈avg_degree · n⌉` edges.
    pub avg_degree: f64,
    pub community_size: usize,
    pub mu: f64,
    pub seed: u64,
}

impl FcsConfig {
    pub fn new(n: usize, avg_degree: f64, community_size: usize, mu: f64, seed: u64) -> Self {
        FcsConfig {
            n,
            avg_degree,
            community_size,
            mu,
            seed,
        }
    }

    pub fn edge_target(&self) -> usize {
        (self.avg_degree * self.n as f64).ceil() as usize
    }

    pub fn community_count(&self) -> usize {
        self.n.div_ceil(self.community_size)
    }

    /// Metadata comment written ahead of generated edge lists.
    pub fn header(&self) -> String {
        format!(
            "fcs n={} d={} S={} mu={} seed={}",
            self.n, self.avg_degree, self.community_size, self.mu, self.seed
        )
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Infeasible(format!("need n >= 2, got {}", self.n)));
        }
        if self.community_size == 0 || self.community_size > self.n {
            return Err(Error::Infeasible(format!(
                "community size {} must lie in [1, n = {}]",
                self.community_size, self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::Infeasible(format!(
                "mu = {} outside [0, 1]",
                self.mu
            )));
        }
        if !(self.avg_degree.is_finite() && self.avg_degree > 0.0) {
            return Err(Error::Infeasible(format!(
                "average degree {} must be positive",
                self.avg_degree
            )));
        }
        let k = self.edge_target() as u128;
        let n = self.n as u128;
        let pairs = n * (n - 1) / 2;
        if k > pairs {
            return Err(Error::Infeasible(format!(
                "{k} edges requested but only {pairs} vertex pairs exist"
            )));
        }
        let intra: u128 = (0..self.community_count())
            .map(|c| block_len(self, c) as u128)
            .map(|s| s * s.saturating_sub(1) / 2)
            .sum();
        if self.mu == 0.0 && k > intra {
            return Err(Error::Infeasible(format!(
                "mu = 0 needs {k} intra-community edges but only {intra} pairs exist"
            )));
        }
        if self.mu == 1.0 && k > pairs - intra {
            return Err(Error::Infeasible(format!(
                "mu = 1 needs {k} inter-community edges but only {} pairs exist",
                pairs - intra
            )));
        }
        Ok(())
    }
}

/// Community label the generator assigns to vertex `u`.
pub fn community_of(cfg: &FcsConfig, u: u32) -> u32 {
    u / cfg.community_size as u32
}

fn block_len(cfg: &FcsConfig, c: usize) -> usize {
    let start = c * cfg.community_size;
    (start + cfg.community_size).min(cfg.n) - start
}

pub fn generate_fcs(cfg: &FcsConfig) -> Result<Graph> {
    generate_fcs_labeled(cfg).map(|(g, _)| g)
}

/// Generates an FCS graph and returns it with the planted labels.
pub fn generate_fcs_labeled(cfg: &FcsConfig) -> Result<(Graph, Vec<u32>)> {
    cfg.validate()?;
    let n = cfg.n;
    let blocks = cfg.community_count();
    let target = cfg.edge_target();
    let max_rejections = 100 * target;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(target * 2);
    let mut edges: Vec<(u32, u32, f64)> = Vec::with_capacity(target);
    let mut rejections = 0usize;

    while edges.len() < target {
        let c = rng.gen_range(0..blocks);
        let start = c * cfg.community_size;
        let len = block_len(cfg, c);
        let u = (start + rng.gen_range(0..len)) as u32;
        let v = if rng.gen::<f64>() < 1.0 - cfg.mu {
            (start + rng.gen_range(0..len)) as u32
        } else if len < n {
            // Uniform over the complement of the block.
            let j = rng.gen_range(0..n - len);
            (if j < start { j } else { j + len }) as u32
        } else {
            u
        };
        let key = (u.min(v), u.max(v));
        if u != v && seen.insert(key) {
            edges.push((key.0, key.1, 1.0));
        } else {
            rejections += 1;
            if rejections > max_rejections {
                return Err(Error::Infeasible(format!(
                    "gave up after {rejections} rejected draws with {} of {target} edges placed",
                    edges.len()
                )));
            }
        }
    }

    edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
    let graph = Graph::from_sorted_unique(n, &edges, vec![0.0; n]);
    let labels = (0..n as u32).map(|u| community_of(cfg, u)).collect();
    Ok((graph, labels))
}
