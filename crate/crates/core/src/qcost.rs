//! Closed-form expected query counts of the quantum search subroutines.
//!
//! Every function is pure and counts queries to `g_Δ`. A single oracle call
//! costs `c_q` evaluations (compute and uncompute), which is why `c_q`
//! multiplies every coherent term but not the classical sampling term.
//!
//! Ceilings of logarithms go through a guard that snaps arguments within
//! `1e-12` of an integer onto that integer, so `⌈log₃ 3⌉` is 1 and not 2.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Constant in the Grover query bound.
pub const ALPHA: f64 = 9.2;
/// Value of `F(L, t)` once at least a quarter of the list is marked.
pub const F_PLATEAU: f64 = 2.0344;

/// Cost-model constants, overridable from the harness config.
#[derive(Debug, Clone, PartialEq)]
pub struct CostParams {
    pub alpha: f64,
    /// `g_Δ` evaluations per coherent oracle call.
    pub cq: f64,
    /// Overall failure budget split across all subroutine calls of a run.
    pub eps_total: f64,
    /// Below this list size FindFirst segments are scanned classically.
    pub lswitch: usize,
    pub nsamples_init: u32,
    /// Base of the logarithm in `M = n log n` and in the ε budget.
    pub log_base: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            alpha: ALPHA,
            cq: 2.0,
            eps_total: 1e-5,
            lswitch: 512,
            nsamples_init: 130,
            log_base: std::f64::consts::E,
        }
    }
}

impl CostParams {
    fn log(&self, x: f64) -> f64 {
        x.ln() / self.log_base.ln()
    }

    /// Move budget `M = n log n`.
    pub fn move_budget(&self, n: usize) -> f64 {
        let n = n as f64;
        if n < 2.0 {
            return 0.0;
        }
        n * self.log(n)
    }

    /// Per-call failure probability `eps_total / (n log n)`.
    pub fn epsilon_budget(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::domain("epsilon_budget", format!("n = {n} < 2")));
        }
        Ok(self.eps_total / self.move_budget(n))
    }

    /// `F(L, t)`, the expected-iteration factor of Grover search with an
    /// unknown number `t` of marked items.
    pub fn f_factor(&self, l: u64, t: u64) -> Result<f64> {
        if t == 0 || t > l {
            return Err(Error::domain(
                "f_factor",
                format!("need 1 <= t <= L, got L = {l}, t = {t}"),
            ));
        }
        if 4 * t >= l {
            return Ok(F_PLATEAU);
        }
        let (l, t) = (l as f64, t as f64);
        let root = ((l - t) * t).sqrt();
        let iterations = guarded_ceil((l / (2.0 * root)).ln() / 1.2f64.ln());
        Ok(2.25 * l / root + iterations - 3.0)
    }

    /// Upper bound on the expected number of Grover oracle calls.
    pub fn q_grover(&self, l: u64, t: u64) -> Result<f64> {
        let f = self.f_factor(l, t)?;
        let ratio = f / (self.alpha * (l as f64).sqrt());
        if ratio >= 1.0 {
            return Err(Error::domain(
                "q_grover",
                format!("F/(α√L) = {ratio} >= 1 at L = {l}, t = {t}"),
            ));
        }
        Ok(f * (1.0 + 1.0 / (1.0 - ratio)))
    }

    /// Worst case of QSearch: all classical samples fail and the Grover
    /// stage runs to its cutoff `⌈log₃(1/ε)⌉` times.
    pub fn w_qsearch(&self, l: u64, nsamples: u32, eps: f64) -> Result<f64> {
        let reps = log_ceil("w_qsearch", eps, 3f64.ln())?;
        Ok(nsamples as f64 + self.alpha * self.cq * reps * (l as f64).sqrt())
    }

    /// Expected QSearch queries: `N_samples` classical draws, then Grover.
    pub fn e_qsearch(&self, l: u64, t: u64, nsamples: u32, eps: f64) -> Result<f64> {
        self.e_qsearch_breakdown(l, t, nsamples, eps)
            .map(|b| b.queries)
    }

    pub fn e_qsearch_breakdown(
        &self,
        l: u64,
        t: u64,
        nsamples: u32,
        eps: f64,
    ) -> Result<CostBreakdown> {
        if t > l {
            return Err(Error::domain("e_qsearch", format!("t = {t} > L = {l}")));
        }
        if t == 0 {
            let total = self.w_qsearch(l, nsamples, eps)?;
            return Ok(CostBreakdown::new(
                nsamples as f64,
                total - nsamples as f64,
                1.0,
            ));
        }
        let f = t as f64 / l as f64;
        let miss = (1.0 - f).powi(nsamples as i32);
        let classical = (1.0 - miss) / f;
        let grover = if miss == 0.0 {
            0.0
        } else {
            miss * self.cq * self.q_grover(l, t)?
        };
        Ok(CostBreakdown::new(classical, grover, 1.0))
    }

    /// Zalka's worst-case search over `L` items with failure probability `ε`.
    pub fn w_zalka(&self, l: u64, eps: f64) -> Result<f64> {
        let r = log_ceil("w_zalka", eps, 2.0 * (4f64 / 3.0).ln())?;
        Ok(self.cq * (5.0 * r + PI * (l as f64).sqrt() * r.sqrt()))
    }

    /// Expected queries of quantum maximum finding over `L` values.
    pub fn e_qmax(&self, l: u64, eps: f64) -> Result<f64> {
        if l < 1 {
            return Err(Error::domain("e_qmax", "L < 1"));
        }
        let reps = log_ceil("e_qmax", eps, 3f64.ln())?;
        let mut sum = 0.0;
        for t in 1..l {
            sum += self.f_factor(l, t)? / (t + 1) as f64;
        }
        Ok(reps * 3.0 * self.cq * sum)
    }

    /// Nested search for a good vertex: QSearch over `L` vertices whose
    /// oracle is a Zalka search over at most `δ_max` communities, run
    /// forward and backward.
    pub fn e_vertexfind(
        &self,
        l: u64,
        t: u64,
        nsamples: u32,
        zeta: f64,
        delta_max: usize,
    ) -> Result<f64> {
        self.e_vertexfind_breakdown(l, t, nsamples, zeta, delta_max)
            .map(|b| b.queries)
    }

    pub fn e_vertexfind_breakdown(
        &self,
        l: u64,
        t: u64,
        nsamples: u32,
        zeta: f64,
        delta_max: usize,
    ) -> Result<CostBreakdown> {
        check_prob("e_vertexfind", zeta)?;
        let outer = self.e_qsearch_breakdown(l, t, nsamples, zeta / 2.0)?;
        Ok(outer.scaled(self.vertexfind_inner(l, nsamples, zeta, delta_max)?))
    }

    /// Queries of one oracle call inside VertexFind: a Zalka search over
    /// `δ_max` communities, computed and uncomputed, with its failure
    /// probability split over the worst-case number of outer calls.
    pub fn vertexfind_inner(
        &self,
        l: u64,
        nsamples: u32,
        zeta: f64,
        delta_max: usize,
    ) -> Result<f64> {
        check_prob("vertexfind_inner", zeta)?;
        if delta_max == 0 {
            return Ok(0.0);
        }
        let calls = self.w_qsearch(l, nsamples, zeta / 2.0)?;
        Ok(2.0 * self.w_zalka(delta_max as u64, zeta / (2.0 * calls))?)
    }

    /// Sparse-graph variant: the inner search is a classical scan of all
    /// `δ_max` candidate communities, forward and backward.
    pub fn e_vertexfind_sg(
        &self,
        l: u64,
        t: u64,
        nsamples: u32,
        zeta: f64,
        delta_max: usize,
    ) -> Result<f64> {
        self.e_vertexfind_sg_breakdown(l, t, nsamples, zeta, delta_max)
            .map(|b| b.queries)
    }

    pub fn e_vertexfind_sg_breakdown(
        &self,
        l: u64,
        t: u64,
        nsamples: u32,
        zeta: f64,
        delta_max: usize,
    ) -> Result<CostBreakdown> {
        let outer = self.e_qsearch_breakdown(l, t, nsamples, zeta)?;
        Ok(outer.scaled(2.0 * delta_max as f64))
    }
}

/// Expected queries split into the classical-sampling and coherent parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub queries: f64,
    pub classical: f64,
    pub quantum: f64,
    /// Cost of one oracle evaluation, already folded into both parts.
    pub inner_factor: f64,
}

impl CostBreakdown {
    fn new(classical: f64, quantum: f64, inner_factor: f64) -> Self {
        CostBreakdown {
            queries: classical + quantum,
            classical,
            quantum,
            inner_factor,
        }
    }

    fn scaled(self, inner: f64) -> Self {
        CostBreakdown::new(
            self.classical * inner,
            self.quantum * inner,
            self.inner_factor * inner,
        )
    }
}

/// Failure budget per FindFirst search: FindFirst over `L` items runs at
/// most `2⌈log₂ L⌉ − 1` searches.
pub fn findfirst_zeta(mu: f64, l: u64) -> Result<f64> {
    if l < 1 {
        return Err(Error::domain("findfirst_zeta", "L < 1"));
    }
    if l == 1 {
        return Ok(mu);
    }
    Ok(mu / (2.0 * ceil_log2(l) as f64))
}

/// `⌈log₂ L⌉` for `L ≥ 1`.
pub fn ceil_log2(l: u64) -> u32 {
    l.next_power_of_two().trailing_zeros()
}

/// Ceiling that treats values within `1e-12` of an integer as that integer.
pub fn guarded_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-12 {
        r
    } else {
        x.ceil()
    }
}

fn check_prob(function: &'static str, eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(function, format!("ε = {eps} outside (0, 1)")))
    }
}

/// `⌈ln(1/ε) / denom⌉` with the ceiling guard.
fn log_ceil(function: &'static str, eps: f64, denom: f64) -> Result<f64> {
    check_prob(function, eps)?;
    Ok(guarded_ceil((1.0 / eps).ln() / denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_boundary() {
        let p = CostParams::default();
        assert_eq!(p.f_factor(4, 1).unwrap(), F_PLATEAU);
        assert_eq!(p.f_factor(100, 25).unwrap(), F_PLATEAU);
        assert!(p.f_factor(100, 24).unwrap() > F_PLATEAU);
        assert!(p.f_factor(10, 0).is_err());
        assert!(p.f_factor(10, 11).is_err());
    }

    #[test]
    fn guard_snaps_exact_logs() {
        assert_eq!(guarded_ceil((3f64).ln() / 3f64.ln()), 1.0);
        assert_eq!(guarded_ceil(1.0 + 1e-9), 2.0);
        assert_eq!(guarded_ceil(2.0 - 1e-13), 2.0);
    }

    #[test]
    fn zeta_split() {
        assert_eq!(findfirst_zeta(0.01, 1024).unwrap(), 5e-4);
        assert_eq!(findfirst_zeta(0.3, 2).unwrap(), 0.15);
        assert_eq!(findfirst_zeta(0.3, 1).unwrap(), 0.3);
        assert_eq!(findfirst_zeta(0.3, 1025).unwrap(), 0.3 / 22.0);
    }

    #[test]
    fn degenerate_inner_factor() {
        let p = CostParams::default();
        assert_eq!(p.e_vertexfind(10, 2, 0, 0.01, 0).unwrap(), 0.0);
    }
}
