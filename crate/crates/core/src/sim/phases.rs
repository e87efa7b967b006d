//! Phase-1 loops of each algorithm on one level graph.

use rand::seq::SliceRandom;
use rand::Rng;

use super::findfirst::{FindFirst, SearchList};
use super::{Algorithm, Estimates, PhaseResult, RunCtx};
use crate::community::{modularity_of, CommunityState, MoveDelta, MoveState, PlainState};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tracker::{MarkedEdgeSet, MarkedVertexSet};

/// Suffix of the current pass as a FindFirst list.
struct Suffix<'a, 's> {
    state: &'a CommunityState<'s>,
    order: &'a [u32],
}

impl SearchList for Suffix<'_, '_> {
    fn len(&self) -> usize {
        self.order.len()
    }
    fn marked(&self, i: usize) -> bool {
        self.state.audit_is_good(self.order[i])
    }
    fn scan_cost(&self, i: usize) -> usize {
        self.state.is_good_cost(self.order[i])
    }
}

/// Hook into the sequential sweep: charges a search for each move and
/// for each pass that ends without finding another good vertex.
trait SweepObserver<S> {
    fn found(
        &mut self,
        ctx: &mut RunCtx<'_>,
        state: &S,
        list: &[u32],
        j: usize,
    ) -> Result<(Estimates, usize)>;
    fn exhausted(&mut self, ctx: &mut RunCtx<'_>, state: &S, list: &[u32]) -> Result<Estimates>;
}

struct Silent;

impl<S> SweepObserver<S> for Silent {
    fn found(
        &mut self,
        _: &mut RunCtx<'_>,
        _: &S,
        _: &[u32],
        _: usize,
    ) -> Result<(Estimates, usize)> {
        Ok((Estimates::default(), 0))
    }
    fn exhausted(&mut self, _: &mut RunCtx<'_>, _: &S, _: &[u32]) -> Result<Estimates> {
        Ok(Estimates::default())
    }
}

struct QlObserver;

impl QlObserver {
    fn findfirst(
        ctx: &mut RunCtx<'_>,
        state: &CommunityState<'_>,
        list: &[u32],
        first: Option<usize>,
    ) -> Result<super::FindFirstReport> {
        let ff = FindFirst {
            params: &ctx.cfg.params,
            scan: ctx.cfg.scan_charge,
            eps: ctx.eps,
            delta_max: state.delta_max(),
        };
        let suffix = Suffix { state, order: list };
        ff.run(&suffix, first, &mut ctx.policy, &mut ctx.aux)
    }
}

impl<'s> SweepObserver<CommunityState<'s>> for QlObserver {
    fn found(
        &mut self,
        ctx: &mut RunCtx<'_>,
        state: &CommunityState<'s>,
        list: &[u32],
        j: usize,
    ) -> Result<(Estimates, usize)> {
        let report = Self::findfirst(ctx, state, list, Some(j))?;
        debug_assert_eq!(report.found, Some(j));
        let max = ctx.maxfind(state.community_degree(list[j]))?;
        let est = Estimates {
            ql: report.ql + max,
            qlsg: report.qlsg + max,
            ..Default::default()
        };
        Ok((est, report.t_last))
    }

    fn exhausted(
        &mut self,
        ctx: &mut RunCtx<'_>,
        state: &CommunityState<'s>,
        list: &[u32],
    ) -> Result<Estimates> {
        let report = Self::findfirst(ctx, state, list, None)?;
        Ok(Estimates {
            ql: report.ql,
            qlsg: report.qlsg,
            ..Default::default()
        })
    }
}

fn audit_gain(before: f64, g: &Graph, labels: &[u32], m: &MoveDelta) -> Result<f64> {
    let after = modularity_of(g, labels);
    if (after - before - m.delta).abs() > 1e-9 || m.delta <= 0.0 {
        return Err(Error::AuditFailure(format!(
            "move of {} to {} reported gain {} but modularity changed by {}",
            m.vertex,
            m.target,
            m.delta,
            after - before
        )));
    }
    Ok(after)
}

fn audit_state(state: &CommunityState<'_>) -> Result<()> {
    state.audit().map_err(Error::AuditFailure)
}

impl RunCtx<'_> {
    pub(super) fn run_phase(&mut self, g: &Graph) -> Result<PhaseResult> {
        match self.algo {
            Algorithm::Ol if !self.cfg.use_cache => {
                let mut state = PlainState::singleton(g);
                self.sweep(&mut state, &mut Silent)
            }
            Algorithm::Ol => {
                let mut state = CommunityState::singleton(g);
                self.sweep(&mut state, &mut Silent)
            }
            Algorithm::Ql => {
                let mut state = CommunityState::singleton(g);
                self.sweep(&mut state, &mut QlObserver)
            }
            Algorithm::OlReplace => self.replacement_phase(g),
            Algorithm::Sql => self.simple_phase(g),
            Algorithm::Eql => self.edge_phase(g),
        }
    }

    /// Shuffled sequential sweeps; a phase ends after a pass without moves.
    fn sweep<S: MoveState, O: SweepObserver<S>>(
        &mut self,
        state: &mut S,
        observer: &mut O,
    ) -> Result<PhaseResult> {
        let n = state.graph().n();
        self.memory_bytes = self.memory_bytes.max(state.memory_bytes());
        let mut order: Vec<u32> = (0..n as u32).collect();
        let mut moves = 0u64;
        let mut mark = state.calls();
        let mut q = if self.cfg.audit {
            state.modularity()
        } else {
            0.0
        };
        'passes: loop {
            order.shuffle(&mut self.rng);
            let mut start = 0usize;
            let mut pass_moves = 0u64;
            for i in 0..n {
                let u = order[i];
                let Some(m) = state.best_move(u).filter(|m| m.delta > 0.0) else {
                    continue;
                };
                let (est, t) = observer.found(self, state, &order[start..], i - start)?;
                state.apply_move(u, m.target)?;
                if self.cfg.audit {
                    q = audit_gain(q, state.graph(), state.labels(), &m)?;
                }
                let calls = state.calls();
                self.record(n - start, t, calls - mark, est, m.delta);
                mark = calls;
                self.moves += 1;
                self.gain_sum += m.delta;
                moves += 1;
                pass_moves += 1;
                start = i + 1;
                if self.out_of_time() {
                    break 'passes;
                }
            }
            if start < n {
                let est = observer.exhausted(self, state, &order[start..])?;
                let calls = state.calls();
                self.record(n - start, 0, calls - mark, est, 0.0);
                mark = calls;
            }
            if pass_moves == 0 || self.out_of_time() {
                break;
            }
        }
        let calls = state.calls();
        if calls > mark {
            self.record(0, 0, calls - mark, Estimates::default(), 0.0);
        }
        self.classical_calls += calls;
        self.memory_bytes = self.memory_bytes.max(state.memory_bytes());
        Ok(PhaseResult {
            labels: state.labels().to_vec(),
            moves,
        })
    }

    fn check_trackers(
        &self,
        state: &CommunityState<'_>,
        vertices: Option<&MarkedVertexSet>,
        edges: Option<&MarkedEdgeSet>,
    ) -> Result<()> {
        if !self.cfg.audit {
            return Ok(());
        }
        audit_state(state)?;
        if let Some(v) = vertices {
            if !v
                .members()
                .same_members(MarkedVertexSet::build(state).members())
            {
                return Err(Error::AuditFailure("marked vertex set".into()));
            }
        }
        if let Some(e) = edges {
            if !e
                .members()
                .same_members(MarkedEdgeSet::build(state).members())
            {
                return Err(Error::AuditFailure("marked edge set".into()));
            }
        }
        Ok(())
    }

    /// Applies `m`, refreshes the trackers and returns the modularity
    /// bookkeeping value for audits.
    fn commit(
        &mut self,
        state: &mut CommunityState<'_>,
        m: MoveDelta,
        vertices: Option<&mut MarkedVertexSet>,
        edges: Option<&mut MarkedEdgeSet>,
        q: f64,
    ) -> Result<f64> {
        let old = state.label(m.vertex);
        state.apply_move(m.vertex, m.target)?;
        let vertices = vertices.map(|v| {
            v.update_after_move(state, m.vertex, old, m.target);
            &*v
        });
        let edges = edges.map(|e| {
            e.update_after_move(state, m.vertex, old, m.target);
            &*e
        });
        self.moves += 1;
        self.gain_sum += m.delta;
        if self.cfg.audit {
            let q = audit_gain(q, state.graph(), state.labels(), &m)?;
            self.check_trackers(state, vertices, edges)?;
            return Ok(q);
        }
        Ok(q)
    }

    /// OL with replacement: uniform vertex draws, early-exit goodness
    /// check per draw. The tracker only decides termination.
    fn replacement_phase(&mut self, g: &Graph) -> Result<PhaseResult> {
        let n = g.n();
        let mut state = CommunityState::singleton(g);
        let mut marked = MarkedVertexSet::build(&state);
        self.memory_bytes = self.memory_bytes.max(state.memory_bytes());
        let mut moves = 0;
        let mut mark = 0;
        let mut q = if self.cfg.audit {
            state.modularity()
        } else {
            0.0
        };
        while !marked.is_empty() {
            let u = self.rng.gen_range(0..n as u32);
            self.draws += 1;
            if !state.is_good(u) {
                if self.draws % 1024 == 0 && self.out_of_time() {
                    break;
                }
                continue;
            }
            let m = state
                .best_move(u)
                .expect("a good vertex has a neighbouring community");
            let t = marked.len();
            q = self.commit(&mut state, m, Some(&mut marked), None, q)?;
            self.record(n, t, state.calls() - mark, Estimates::default(), m.delta);
            mark = state.calls();
            moves += 1;
            if self.out_of_time() {
                break;
            }
        }
        if state.calls() > mark {
            self.record(n, 0, state.calls() - mark, Estimates::default(), 0.0);
        }
        self.classical_calls += state.calls();
        Ok(PhaseResult {
            labels: state.labels().to_vec(),
            moves,
        })
    }

    /// SimpleQLouvain: VertexFind over all vertices returns a uniform
    /// marked vertex, which then moves to its best community.
    fn simple_phase(&mut self, g: &Graph) -> Result<PhaseResult> {
        let n = g.n();
        let cfg = self.cfg;
        let p = &cfg.params;
        let mut state = CommunityState::singleton(g);
        let mut marked = MarkedVertexSet::build(&state);
        let mut audit_edges = self.cfg.audit.then(|| MarkedEdgeSet::build(&state));
        self.memory_bytes = self.memory_bytes.max(state.memory_bytes());
        let mut moves = 0;
        let mut mark = 0;
        let mut q = if self.cfg.audit {
            state.modularity()
        } else {
            0.0
        };
        loop {
            let t = marked.len();
            let ns = self.policy.current();
            let dmax = state.delta_max();
            let mut est = Estimates {
                sql: p.e_vertexfind(n as u64, t as u64, ns, self.eps, dmax)?,
                sqlsg: p.e_vertexfind_sg(n as u64, t as u64, ns, self.eps, dmax)?,
                ..Default::default()
            };
            let tracker = &marked;
            self.policy.simulate_search(&mut self.aux, t, n, |r| {
                tracker.contains(r.gen_range(0..n as u32))
            });
            if t == 0 {
                self.record(n, 0, state.calls() - mark, est, 0.0);
                mark = state.calls();
                break;
            }
            let u = marked.sample(&mut self.rng)?;
            let m = state
                .best_move(u)
                .expect("a marked vertex has a neighbouring community");
            let max = self.maxfind(state.community_degree(u))?;
            est.sql += max;
            est.sqlsg += max;
            q = self.commit(&mut state, m, Some(&mut marked), audit_edges.as_mut(), q)?;
            self.record(n, t, state.calls() - mark, est, m.delta);
            mark = state.calls();
            moves += 1;
            if self.out_of_time() {
                break;
            }
        }
        debug_assert_eq!(mark, state.calls());
        self.classical_calls += state.calls();
        Ok(PhaseResult {
            labels: state.labels().to_vec(),
            moves,
        })
    }

    /// EdgeQLouvain: QSearch over the `2|E|` directed edges returns a
    /// uniform marked edge `(w, v)`; `w` then moves to its best community.
    fn edge_phase(&mut self, g: &Graph) -> Result<PhaseResult> {
        let arcs = g.arc_count();
        let cfg = self.cfg;
        let p = &cfg.params;
        let mut state = CommunityState::singleton(g);
        let mut marked = MarkedEdgeSet::build(&state);
        let mut audit_vertices = self.cfg.audit.then(|| MarkedVertexSet::build(&state));
        self.memory_bytes = self.memory_bytes.max(state.memory_bytes());
        let mut moves = 0;
        let mut mark = 0;
        let mut q = if self.cfg.audit {
            state.modularity()
        } else {
            0.0
        };
        loop {
            let t = marked.len();
            let ns = self.policy.current();
            let mut est = Estimates {
                eql: p.e_qsearch(arcs as u64, t as u64, ns, self.eps)?,
                ..Default::default()
            };
            let tracker = &marked;
            self.policy.simulate_search(&mut self.aux, t, arcs, |r| {
                tracker.contains_arc(r.gen_range(0..arcs))
            });
            if t == 0 {
                self.record(arcs, 0, state.calls() - mark, est, 0.0);
                mark = state.calls();
                break;
            }
            let arc = marked.sample(&mut self.rng)?;
            let w = g.arc_source(arc);
            let m = state
                .best_move(w)
                .expect("a marked edge leaves a neighbouring community");
            est.eql += self.maxfind(state.community_degree(w))?;
            q = self.commit(&mut state, m, audit_vertices.as_mut(), Some(&mut marked), q)?;
            self.record(arcs, t, state.calls() - mark, est, m.delta);
            mark = state.calls();
            moves += 1;
            if self.out_of_time() {
                break;
            }
        }
        debug_assert_eq!(mark, state.calls());
        self.classical_calls += state.calls();
        Ok(PhaseResult {
            labels: state.labels().to_vec(),
            moves,
        })
    }
}
