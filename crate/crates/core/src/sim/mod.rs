//! Multi-level Louvain runs with query accounting for each algorithm variant.
//!
//! Every run executes the real classical algorithm on a real
//! [`CommunityState`] and, alongside, charges what each quantum variant
//! would have paid for the same search according to [`crate::qcost`].
//!
//! | algorithm    | trajectory                               | estimates          |
//! |--------------|------------------------------------------|--------------------|
//! | `ol`         | shuffled sequential sweeps               | classical only     |
//! | `ol-replace` | uniform draws with replacement           | classical only     |
//! | `ql`         | same as `ol`, FindFirst over each suffix | `est_ql`, `est_qlsg` |
//! | `sql`        | uniform marked vertex per move           | `est_sql`, `est_sqlsg` |
//! | `eql`        | uniform marked directed edge per move    | `est_eql`          |
//!
//! Randomness: the trajectory (shuffles and marked samples) draws from
//! `ChaCha8Rng::seed_from_u64(seed)` stream 0; simulated classical samples
//! of QSearch draw from stream 1 of the same seed, so estimates never
//! perturb the trajectory.

mod findfirst;
mod ledger;
mod phases;
mod policy;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use findfirst::{FindFirst, FindFirstReport, ScanCharge, SearchList};
pub use ledger::{Estimates, MoveRecord, QueryLedger, LEDGER_HEADER};
pub use policy::NsamplesPolicy;

use crate::community::modularity_of;
use crate::error::{Error, Result};
use crate::graph::{aggregate, Graph};
use crate::qcost::CostParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ol,
    OlReplace,
    Ql,
    Sql,
    Eql,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Ol,
        Algorithm::OlReplace,
        Algorithm::Ql,
        Algorithm::Sql,
        Algorithm::Eql,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ol => "ol",
            Algorithm::OlReplace => "ol-replace",
            Algorithm::Ql => "ql",
            Algorithm::Sql => "sql",
            Algorithm::Eql => "eql",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub params: CostParams,
    /// Switch `N_samples` off by the `t/|L| ≤ 1/N` threshold instead of
    /// simulated draws.
    pub deterministic_nsamples: bool,
    /// `ol` only: keep community adjacency lists (`false` rebuilds them per visit).
    pub use_cache: bool,
    /// Check incremental state, trackers and every gain against
    /// from-scratch recomputation after each move. Quadratic; tests only.
    pub audit: bool,
    /// Keep per-move ledger records (totals are always kept).
    pub record_moves: bool,
    pub time_limit: Option<Duration>,
    pub scan_charge: ScanCharge,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            params: CostParams::default(),
            deterministic_nsamples: false,
            use_cache: true,
            audit: false,
            record_moves: false,
            time_limit: None,
            scan_charge: ScanCharge::default(),
        }
    }
}

/// Result of one multi-level run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub algo: Algorithm,
    pub seed: u64,
    /// Final community of every input vertex.
    pub labels: Vec<u32>,
    pub initial_modularity: f64,
    pub modularity: f64,
    /// Levels that made at least one move.
    pub levels: usize,
    /// Total moves `T` over all levels.
    pub moves: u64,
    /// Counted `g_Δ` calls of the classical algorithm actually executed.
    pub classical_calls: u64,
    pub estimates: Estimates,
    pub ledger: QueryLedger,
    /// Sum of the gains of all moves.
    pub gain_sum: f64,
    /// `M = n log n` for the input graph.
    pub move_budget: f64,
    pub budget_exceeded: bool,
    pub timed_out: bool,
    /// Vertex draws made by `ol-replace`.
    pub draws: u64,
    /// Largest state size seen, in bytes.
    pub memory_bytes: usize,
}

/// Hard cap `2 W²` on moves for integer weights, where every move gains at
/// least `1/W²` and modularity spans an interval of length below 2.
pub fn max_moves_bound(g: &Graph) -> f64 {
    let w = g.total_weight();
    2.0 * w * w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxFindMethod {
    Classical,
    Quantum,
}

/// Cheaper of a classical scan over `δ_u` communities and quantum
/// maximum finding.
pub fn maxfind_cost(params: &CostParams, delta_u: usize, eps: f64) -> Result<(f64, MaxFindMethod)> {
    if delta_u <= 1 {
        return Ok((delta_u as f64, MaxFindMethod::Classical));
    }
    let quantum = params.e_qmax(delta_u as u64, eps)?;
    Ok(if quantum < delta_u as f64 {
        (quantum, MaxFindMethod::Quantum)
    } else {
        (delta_u as f64, MaxFindMethod::Classical)
    })
}

pub(crate) struct RunCtx<'c> {
    cfg: &'c SimConfig,
    algo: Algorithm,
    eps: f64,
    rng: ChaCha8Rng,
    aux: ChaCha8Rng,
    ledger: QueryLedger,
    policy: NsamplesPolicy,
    level: usize,
    moves: u64,
    gain_sum: f64,
    draws: u64,
    classical_calls: u64,
    memory_bytes: usize,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl RunCtx<'_> {
    fn record(
        &mut self,
        list_size: usize,
        t: usize,
        classical_calls: u64,
        est: Estimates,
        delta: f64,
    ) {
        self.ledger.push(MoveRecord {
            level: self.level,
            k: self.moves,
            algo: self.algo,
            list_size,
            t,
            classical_calls,
            est,
            delta,
        });
    }

    fn out_of_time(&mut self) -> bool {
        if !self.timed_out {
            if let Some(d) = self.deadline {
                self.timed_out = Instant::now() >= d;
            }
        }
        self.timed_out
    }

    fn maxfind(&self, delta_u: usize) -> Result<f64> {
        maxfind_cost(&self.cfg.params, delta_u, self.eps).map(|(q, _)| q)
    }
}

/// Labels after one phase and the number of moves it made.
pub(crate) struct PhaseResult {
    labels: Vec<u32>,
    moves: u64,
}

/// Runs `algo` on `g` through all levels.
pub fn simulate(g: &Graph, algo: Algorithm, seed: u64, cfg: &SimConfig) -> Result<RunOutcome> {
    let n0 = g.n();
    if n0 == 0 {
        return Err(Error::EmptyGraph);
    }
    let params = &cfg.params;
    let eps = params.epsilon_budget(n0.max(2))?;
    let aux = {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(1);
        r
    };
    let mut ctx = RunCtx {
        cfg,
        algo,
        eps,
        rng: ChaCha8Rng::seed_from_u64(seed),
        aux,
        ledger: QueryLedger::new(cfg.record_moves),
        policy: NsamplesPolicy::new(params.nsamples_init, cfg.deterministic_nsamples),
        level: 0,
        moves: 0,
        gain_sum: 0.0,
        draws: 0,
        classical_calls: 0,
        memory_bytes: 0,
        deadline: cfg.time_limit.map(|d| Instant::now() + d),
        timed_out: false,
    };

    let mut membership: Vec<u32> = (0..n0 as u32).collect();
    let mut coarse: Option<Graph> = None;
    let mut levels = 0;
    loop {
        let next = {
            let level_graph = coarse.as_ref().unwrap_or(g);
            ctx.policy.reset();
            let phase = ctx.run_phase(level_graph)?;
            if phase.moves == 0 {
                None
            } else {
                let agg = aggregate(level_graph, &phase.labels)?;
                let shrank = agg.graph.n() < level_graph.n();
                Some((agg, shrank))
            }
        };
        let Some((agg, shrank)) = next else { break };
        levels += 1;
        for m in membership.iter_mut() {
            *m = agg.vertex_map[*m as usize];
        }
        coarse = Some(agg.graph);
        ctx.level += 1;
        if !shrank || ctx.timed_out {
            break;
        }
    }

    let move_budget = params.move_budget(n0);
    let classical_calls = ctx.classical_calls;
    debug_assert_eq!(classical_calls, ctx.ledger.classical_calls());
    Ok(RunOutcome {
        algo,
        seed,
        initial_modularity: modularity_of(g, &(0..n0 as u32).collect::<Vec<_>>()),
        modularity: modularity_of(g, &membership),
        labels: membership,
        levels,
        moves: ctx.moves,
        classical_calls,
        estimates: ctx.ledger.totals(),
        budget_exceeded: ctx.moves as f64 > move_budget,
        move_budget,
        gain_sum: ctx.gain_sum,
        timed_out: ctx.timed_out,
        draws: ctx.draws,
        memory_bytes: ctx.memory_bytes,
        ledger: ctx.ledger,
    })
}
