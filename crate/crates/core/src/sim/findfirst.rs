//! Query accounting for FindFirst, the search QLouvain uses to locate the
//! first good vertex of a list.
//!
//! FindFirst searches segments of doubling size, `[0,1]`, `[2,3]`, `[4,7]`,
//! `[8,15]`, ..., until one contains a marked item, then halves that segment
//! (searching the left half each time) down to a single item. A good item
//! at the end of a list of length `2^q`, `q ≥ 2`, therefore costs exactly
//! `2q − 1` searches (a two-item list costs two). Segments shorter than `lswitch` are scanned classically
//! instead, which also pins down the first good item directly.

use rand::Rng;

use super::policy::NsamplesPolicy;
use crate::error::Result;
use crate::qcost::{findfirst_zeta, CostParams};

/// Charges accumulated by one FindFirst call.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FindFirstReport {
    pub found: Option<usize>,
    /// With the nested quantum inner search.
    pub ql: f64,
    /// With the classical inner scan.
    pub qlsg: f64,
    pub quantum_searches: usize,
    pub classical_scans: usize,
    /// Marked items in the last searched sublist.
    pub t_last: usize,
}

/// The list being searched, as seen by the simulator.
pub trait SearchList {
    fn len(&self) -> usize;
    /// Exact goodness of item `i`, uncounted.
    fn marked(&self, i: usize) -> bool;
    /// `g_Δ` calls an early-exit classical check of item `i` costs.
    fn scan_cost(&self, i: usize) -> usize;
}

/// What a classically scanned item costs inside FindFirst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanCharge {
    /// Early-exit goodness check, the same for both variants.
    #[default]
    EarlyExit,
    /// One VertexFind oracle call per item: nested quantum search for QL,
    /// `2 δ_max` for QLSG.
    Oracle,
}

pub struct FindFirst<'a> {
    pub params: &'a CostParams,
    pub scan: ScanCharge,
    /// Failure budget of the whole FindFirst call.
    pub eps: f64,
    pub delta_max: usize,
}

impl FindFirst<'_> {
    /// Simulates FindFirst on `list` whose first marked item is `first`
    /// (`None` if the list has no marked item). A list without marked items
    /// is charged one worst-case search over its full length.
    pub fn run<L: SearchList, R: Rng>(
        &self,
        list: &L,
        first: Option<usize>,
        policy: &mut NsamplesPolicy,
        rng: &mut R,
    ) -> Result<FindFirstReport> {
        let len = list.len();
        let mut report = FindFirstReport::default();
        if len == 0 {
            return Ok(report);
        }
        let zeta = findfirst_zeta(self.eps, len as u64)?;
        let mut search = Searcher {
            ff: self,
            list,
            zeta,
            first,
            policy,
            report: &mut report,
        };
        let Some(j) = first else {
            search.charge(0, len - 1, rng)?;
            return Ok(report);
        };
        let mut lo = 0usize;
        let mut k = 0u32;
        loop {
            let hi = if k == 0 { 1 } else { (2usize << k) - 1 }.min(len - 1);
            match search.charge(lo, hi, rng)? {
                Outcome::Located(i) => {
                    search.report.found = Some(i);
                    break;
                }
                Outcome::Present => {
                    let i = search.bisect(lo, hi, rng)?;
                    search.report.found = Some(i);
                    break;
                }
                Outcome::Absent => {
                    assert!(hi < j, "segment before the first marked item");
                    lo = hi + 1;
                    k += 1;
                }
            }
        }
        Ok(report)
    }
}

enum Outcome {
    Absent,
    Present,
    Located(usize),
}

struct Searcher<'s, 'a, L> {
    ff: &'s FindFirst<'a>,
    list: &'s L,
    zeta: f64,
    first: Option<usize>,
    policy: &'s mut NsamplesPolicy,
    report: &'s mut FindFirstReport,
}

impl<L: SearchList> Searcher<'_, '_, L> {
    fn marked_in(&self, lo: usize, hi: usize) -> usize {
        match self.first {
            Some(j) if j <= hi => (j.max(lo)..=hi).filter(|&i| self.list.marked(i)).count(),
            _ => 0,
        }
    }

    /// Charges one search over `[lo, hi]`.
    fn charge<R: Rng>(&mut self, lo: usize, hi: usize, rng: &mut R) -> Result<Outcome> {
        let size = hi - lo + 1;
        if size < self.ff.params.lswitch {
            self.report.classical_scans += 1;
            let stop = match self.first {
                Some(j) if (lo..=hi).contains(&j) => j,
                _ => hi,
            };
            let cost = (lo..=stop).map(|i| self.list.scan_cost(i)).sum::<usize>() as f64;
            let items = (stop - lo + 1) as f64;
            let p = self.ff.params;
            let dmax = self.ff.delta_max;
            let nested = || -> Result<f64> {
                Ok(items
                    * p.vertexfind_inner(size as u64, self.policy.current(), self.zeta, dmax)?)
            };
            let (ql, qlsg) = match self.ff.scan {
                ScanCharge::EarlyExit => (cost, cost),
                ScanCharge::Oracle => (nested()?, items * 2.0 * dmax as f64),
            };
            self.report.ql += ql;
            self.report.qlsg += qlsg;
            let located = self.first.filter(|j| (lo..=hi).contains(j));
            self.report.t_last = usize::from(located.is_some());
            return Ok(located.map_or(Outcome::Absent, Outcome::Located));
        }
        let t = self.marked_in(lo, hi);
        let p = self.ff.params;
        let ns = self.policy.current();
        self.report.quantum_searches += 1;
        self.report.t_last = t;
        self.report.ql +=
            p.e_vertexfind(size as u64, t as u64, ns, self.zeta, self.ff.delta_max)?;
        self.report.qlsg +=
            p.e_vertexfind_sg(size as u64, t as u64, ns, self.zeta, self.ff.delta_max)?;
        let list = self.list;
        self.policy
            .simulate_search(rng, t, size, |r| list.marked(lo + r.gen_range(0..size)));
        Ok(if t > 0 {
            Outcome::Present
        } else {
            Outcome::Absent
        })
    }

    /// Halves `[lo, hi]`, known to hold a marked item, down to the first one.
    fn bisect<R: Rng>(&mut self, mut lo: usize, mut hi: usize, rng: &mut R) -> Result<usize> {
        while lo < hi {
            let half = (hi - lo + 1) / 2;
            match self.charge(lo, lo + half - 1, rng)? {
                Outcome::Located(i) => return Ok(i),
                Outcome::Present => hi = lo + half - 1,
                Outcome::Absent => lo += half,
            }
        }
        Ok(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    struct Synthetic {
        len: usize,
        good: Vec<usize>,
    }

    impl SearchList for Synthetic {
        fn len(&self) -> usize {
            self.len
        }
        fn marked(&self, i: usize) -> bool {
            self.good.contains(&i)
        }
        fn scan_cost(&self, _: usize) -> usize {
            3
        }
    }

    fn run(len: usize, good: Vec<usize>, lswitch: usize) -> FindFirstReport {
        let params = CostParams {
            lswitch,
            ..CostParams::default()
        };
        let ff = FindFirst {
            params: &params,
            scan: ScanCharge::EarlyExit,
            eps: 1e-6,
            delta_max: 4,
        };
        let first = good.iter().copied().min();
        let list = Synthetic { len, good };
        let mut policy = NsamplesPolicy::new(130, false);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        ff.run(&list, first, &mut policy, &mut rng).unwrap()
    }

    #[test]
    fn last_item_costs_two_q_minus_one() {
        assert_eq!(run(2, vec![1], 1).quantum_searches, 2);
        for q in 2..=10u32 {
            let len = 1usize << q;
            let r = run(len, vec![len - 1], 1);
            assert_eq!(r.found, Some(len - 1));
            assert_eq!(r.quantum_searches, 2 * q as usize - 1, "q = {q}");
        }
    }

    #[test]
    fn finds_first_of_many() {
        for first in [0usize, 1, 5, 77, 300, 511] {
            let r = run(512, vec![first, first + 1, 600, 1000], 1);
            assert_eq!(r.found, Some(first));
        }
    }

    #[test]
    fn classical_first_item() {
        let r = run(100, vec![0, 4], 512);
        assert_eq!(r.found, Some(0));
        assert_eq!(r.classical_scans, 1);
        assert_eq!(r.ql, 3.0);
        assert_eq!(r.qlsg, 3.0);
    }

    #[test]
    fn empty_list_single_charge() {
        let r = run(100, vec![], 512);
        assert_eq!(r.found, None);
        assert_eq!(r.classical_scans, 1);
        assert_eq!(r.ql, 300.0);
        let q = run(1000, vec![], 512);
        assert_eq!(q.quantum_searches, 1);
        assert!(q.ql > q.qlsg);
    }
}
