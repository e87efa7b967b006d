//! Partition state, modularity, and the counted move-gain function `g_Δ`.
//!
//! [`CommunityState`] keeps, for every vertex `u`, the community adjacency
//! list `η_u`: the communities of `u`'s neighbours, sorted by id, each with
//! `S_u^α` (the weight from `u` into `C_α`) and the number of neighbours in
//! `C_α`. An entry disappears when its neighbour count reaches zero, so
//! `|η_u| = δ_u ≤ d_u` holds exactly and float residue never keeps a stale
//! community alive.
//!
//! Gains are compared through their numerator
//! `2W(S_u^α − S_u^{ℓ(u)}) − s_u(Σ_α − Σ_{ℓ(u)} + s_u)`, which is exact for
//! integer weights below 2^53, so the strict `Δ > 0` test never misfires on
//! rounding.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A candidate move of `vertex` into community `target`, with its gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveDelta {
    pub vertex: u32,
    pub target: u32,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct EtaEntry {
    community: u32,
    count: u32,
    weight: f64,
}

/// Shared interface of the cached and uncached Louvain states.
pub trait MoveState {
    fn graph(&self) -> &Graph;
    fn labels(&self) -> &[u32];
    /// Argmax over the neighbouring communities of `u`, `δ_u` counted calls.
    fn best_move(&self, u: u32) -> Option<MoveDelta>;
    fn apply_move(&mut self, u: u32, target: u32) -> Result<()>;
    /// Counted `g_Δ` evaluations so far.
    fn calls(&self) -> u64;
    /// Rough resident size of the state in bytes.
    fn memory_bytes(&self) -> usize;
    fn modularity(&self) -> f64 {
        modularity_of(self.graph(), self.labels())
    }
}

#[inline]
fn gain_numerator(
    two_w: f64,
    s_u: f64,
    s_alpha: f64,
    s_own: f64,
    sig_alpha: f64,
    sig_own: f64,
) -> f64 {
    two_w * (s_alpha - s_own) - s_u * (sig_alpha - sig_own + s_u)
}

/// Modularity of `labels` on `g`, diagonal term included.
///
/// Computed from the adjacency and strengths alone, so it serves as an
/// independent check on any incremental state.
pub fn modularity_of(g: &Graph, labels: &[u32]) -> f64 {
    let two_w = 2.0 * g.total_weight();
    if two_w == 0.0 {
        return 0.0;
    }
    let bound = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut tot = vec![0.0; bound];
    let mut internal = 0.0;
    for u in 0..g.n() as u32 {
        let lu = labels[u as usize];
        tot[lu as usize] += g.strength(u);
        internal += g.loop_weight(u);
        for (v, w) in g.adjacency(u) {
            if labels[v as usize] == lu {
                internal += w;
            }
        }
    }
    let expected: f64 = tot.iter().map(|t| t * t).sum();
    internal / two_w - expected / (two_w * two_w)
}

/// Incremental community state of one Louvain level.
#[derive(Debug, Clone)]
pub struct CommunityState<'g> {
    g: &'g Graph,
    labels: Vec<u32>,
    sigma: Vec<f64>,
    eta: Vec<Vec<EtaEntry>>,
    own: Vec<f64>,
    members: Vec<Vec<u32>>,
    member_pos: Vec<u32>,
    delta_max: usize,
    calls: Cell<u64>,
}

impl<'g> CommunityState<'g> {
    /// Every vertex in its own community, `ℓ(u) = u`.
    pub fn singleton(g: &'g Graph) -> Self {
        let labels = (0..g.n() as u32).collect::<Vec<_>>();
        Self::build(g, labels)
    }

    /// State for an arbitrary partition; labels must lie in `[0, n)`.
    pub fn from_labels(g: &'g Graph, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != g.n() {
            return Err(Error::LabelsLength {
                expected: g.n(),
                got: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l as usize >= g.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: g.n(),
            });
        }
        Ok(Self::build(g, labels))
    }

    fn build(g: &'g Graph, labels: Vec<u32>) -> Self {
        let n = g.n();
        let mut sigma = vec![0.0; n];
        let mut members = vec![Vec::new(); n];
        let mut member_pos = vec![0u32; n];
        for u in 0..n {
            let l = labels[u] as usize;
            sigma[l] += g.strength(u as u32);
            member_pos[u] = members[l].len() as u32;
            members[l].push(u as u32);
        }
        let mut eta = Vec::with_capacity(n);
        let mut own = vec![0.0; n];
        for u in 0..n as u32 {
            let mut list: Vec<EtaEntry> = g
                .adjacency(u)
                .map(|(v, w)| EtaEntry {
                    community: labels[v as usize],
                    count: 1,
                    weight: w,
                })
                .collect();
            list.sort_unstable_by_key(|e| e.community);
            list.dedup_by(|next, kept| {
                if next.community == kept.community {
                    kept.count += next.count;
                    kept.weight += next.weight;
                    true
                } else {
                    false
                }
            });
            own[u as usize] = lookup(&list, labels[u as usize]);
            eta.push(list);
        }
        let delta_max = eta.iter().map(Vec::len).max().unwrap_or(0);
        CommunityState {
            g,
            labels,
            sigma,
            eta,
            own,
            members,
            member_pos,
            delta_max,
            calls: Cell::new(0),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, u: u32) -> u32 {
        self.labels[u as usize]
    }

    /// `Σ_α`, the strength sum of community `α`.
    pub fn sigma(&self, community: u32) -> f64 {
        self.sigma[community as usize]
    }

    /// `S_u^{ℓ(u)}`.
    pub fn own_weight(&self, u: u32) -> f64 {
        self.own[u as usize]
    }

    /// `η_u` as `(community, S_u^α)` pairs in ascending community order.
    pub fn neighbor_communities(&self, u: u32) -> impl ExactSizeIterator<Item = (u32, f64)> + '_ {
        self.eta[u as usize].iter().map(|e| (e.community, e.weight))
    }

    /// `δ_u = |η_u|`.
    pub fn community_degree(&self, u: u32) -> usize {
        self.eta[u as usize].len()
    }

    /// Running maximum of `δ_u` over the lifetime of this state.
    pub fn delta_max(&self) -> usize {
        self.delta_max
    }

    pub fn members(&self, community: u32) -> &[u32] {
        &self.members[community as usize]
    }

    /// Number of non-empty communities.
    pub fn community_count(&self) -> usize {
        self.members.iter().filter(|m| !m.is_empty()).count()
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    #[inline]
    fn count(&self, k: u64) {
        self.calls.set(self.calls.get() + k);
    }

    #[inline]
    fn numerator(&self, u: u32, community: u32, s_alpha: f64) -> f64 {
        let lu = self.labels[u as usize];
        if community == lu {
            return 0.0;
        }
        gain_numerator(
            2.0 * self.g.total_weight(),
            self.g.strength(u),
            s_alpha,
            self.own[u as usize],
            self.sigma[community as usize],
            self.sigma[lu as usize],
        )
    }

    #[inline]
    fn scale(&self) -> f64 {
        let w = self.g.total_weight();
        2.0 * w * w
    }

    /// `Δ_u^α`, one counted `g_Δ` call. `α` must be a neighbouring
    /// community of `u` or `ℓ(u)` itself (which yields 0).
    pub fn delta(&self, u: u32, community: u32) -> Result<MoveDelta> {
        let d = self.audit_delta(u, community)?;
        self.count(1);
        Ok(d)
    }

    /// [`CommunityState::delta`] without touching the call counter.
    pub fn audit_delta(&self, u: u32, community: u32) -> Result<MoveDelta> {
        let list = &self.eta[u as usize];
        let s_alpha = match list.binary_search_by_key(&community, |e| e.community) {
            Ok(j) => list[j].weight,
            Err(_) if community == self.labels[u as usize] => self.own[u as usize],
            Err(_) => {
                return Err(Error::IllegalMove {
                    vertex: u,
                    target: community,
                })
            }
        };
        Ok(MoveDelta {
            vertex: u,
            target: community,
            delta: self.numerator(u, community, s_alpha) / self.scale(),
        })
    }

    /// Full scan of `η_u`: `δ_u` counted calls, ties to the smallest id.
    pub fn best_move(&self, u: u32) -> Option<MoveDelta> {
        let list = &self.eta[u as usize];
        self.count(list.len() as u64);
        let mut best: Option<(u32, f64)> = None;
        for e in list {
            let num = self.numerator(u, e.community, e.weight);
            if best.is_none_or(|(_, b)| num > b) {
                best = Some((e.community, num));
            }
        }
        best.map(|(target, num)| MoveDelta {
            vertex: u,
            target,
            delta: num / self.scale(),
        })
    }

    /// Whether some neighbouring community strictly improves `Q`. Stops at
    /// the first such community; one counted call per community examined.
    pub fn is_good(&self, u: u32) -> bool {
        let (good, examined) = self.scan_good(u);
        self.count(examined as u64);
        good
    }

    /// [`CommunityState::is_good`] without touching the call counter.
    pub fn audit_is_good(&self, u: u32) -> bool {
        self.scan_good(u).0
    }

    /// Calls [`CommunityState::is_good`] would be charged for `u`.
    pub fn is_good_cost(&self, u: u32) -> usize {
        self.scan_good(u).1
    }

    fn scan_good(&self, u: u32) -> (bool, usize) {
        for (i, e) in self.eta[u as usize].iter().enumerate() {
            if self.numerator(u, e.community, e.weight) > 0.0 {
                return (true, i + 1);
            }
        }
        (false, self.eta[u as usize].len())
    }

    /// Calls `f` with every community `α ≠ ℓ(u)` in `η_u` that has `Δ_u^α > 0`.
    pub fn for_each_good_target(&self, u: u32, mut f: impl FnMut(u32)) {
        for e in &self.eta[u as usize] {
            if self.numerator(u, e.community, e.weight) > 0.0 {
                f(e.community);
            }
        }
    }

    /// Moves `u` into the neighbouring community `target`.
    pub fn apply_move(&mut self, u: u32, target: u32) -> Result<()> {
        let old = self.labels[u as usize];
        let adjacent = self.eta[u as usize]
            .binary_search_by_key(&target, |e| e.community)
            .is_ok();
        if target == old || !adjacent {
            return Err(Error::IllegalMove { vertex: u, target });
        }
        let s_u = self.g.strength(u);
        self.sigma[old as usize] -= s_u;
        self.sigma[target as usize] += s_u;
        self.labels[u as usize] = target;

        let pos = self.member_pos[u as usize] as usize;
        let old_members = &mut self.members[old as usize];
        old_members.swap_remove(pos);
        if let Some(&moved) = old_members.get(pos) {
            self.member_pos[moved as usize] = pos as u32;
        }
        self.member_pos[u as usize] = self.members[target as usize].len() as u32;
        self.members[target as usize].push(u);

        let g = self.g;
        for (v, w) in g.adjacency(u) {
            let lv = self.labels[v as usize];
            let list = &mut self.eta[v as usize];
            let j = list
                .binary_search_by_key(&old, |e| e.community)
                .expect("η lists the community of every neighbour");
            list[j].count -= 1;
            list[j].weight -= w;
            let left = if list[j].count == 0 {
                list.remove(j);
                0.0
            } else {
                list[j].weight
            };
            let joined = match list.binary_search_by_key(&target, |e| e.community) {
                Ok(k) => {
                    list[k].count += 1;
                    list[k].weight += w;
                    list[k].weight
                }
                Err(k) => {
                    list.insert(
                        k,
                        EtaEntry {
                            community: target,
                            count: 1,
                            weight: w,
                        },
                    );
                    w
                }
            };
            if lv == old {
                self.own[v as usize] = left;
            } else if lv == target {
                self.own[v as usize] = joined;
            }
            self.delta_max = self.delta_max.max(list.len());
        }
        self.own[u as usize] = lookup(&self.eta[u as usize], target);
        Ok(())
    }

    /// Modularity of the current partition; not counted.
    pub fn modularity(&self) -> f64 {
        modularity_of(self.g, &self.labels)
    }

    /// Compares every incremental field with a from-scratch rebuild.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let fresh = Self::build(self.g, self.labels.clone());
        let tol = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
        for c in 0..self.g.n() {
            if !tol(self.sigma[c], fresh.sigma[c]) {
                return Err(format!("Σ_{c}: {} vs {}", self.sigma[c], fresh.sigma[c]));
            }
            let mut mine = self.members[c].clone();
            mine.sort_unstable();
            if mine != fresh.members[c] {
                return Err(format!("members of community {c} differ"));
            }
        }
        for u in 0..self.g.n() {
            let (a, b) = (&self.eta[u], &fresh.eta[u]);
            let same = a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| {
                    x.community == y.community && x.count == y.count && tol(x.weight, y.weight)
                });
            if !same {
                return Err(format!("η_{u} differs: {a:?} vs {b:?}"));
            }
            if !tol(self.own[u], fresh.own[u]) {
                return Err(format!("S_{u}^ℓ: {} vs {}", self.own[u], fresh.own[u]));
            }
            if self.members[self.labels[u] as usize][self.member_pos[u] as usize] != u as u32 {
                return Err(format!("member position of {u} is stale"));
            }
        }
        Ok(())
    }
}

fn lookup(list: &[EtaEntry], community: u32) -> f64 {
    list.binary_search_by_key(&community, |e| e.community)
        .map_or(0.0, |j| list[j].weight)
}

impl MoveState for CommunityState<'_> {
    fn graph(&self) -> &Graph {
        self.g
    }
    fn labels(&self) -> &[u32] {
        &self.labels
    }
    fn best_move(&self, u: u32) -> Option<MoveDelta> {
        CommunityState::best_move(self, u)
    }
    fn apply_move(&mut self, u: u32, target: u32) -> Result<()> {
        CommunityState::apply_move(self, u, target)
    }
    fn calls(&self) -> u64 {
        CommunityState::calls(self)
    }
    fn memory_bytes(&self) -> usize {
        let eta: usize = self
            .eta
            .iter()
            .map(|l| {
                l.capacity() * std::mem::size_of::<EtaEntry>()
                    + std::mem::size_of::<Vec<EtaEntry>>()
            })
            .sum();
        let members: usize = self
            .members
            .iter()
            .map(|m| m.capacity() * 4 + std::mem::size_of::<Vec<u32>>())
            .sum();
        let n = self.g.n();
        eta + members + n * (4 + 8 + 8 + 4)
    }
}

/// Louvain state without community adjacency lists: `L_u` is rebuilt from
/// the raw adjacency on every visit.
#[derive(Debug, Clone)]
pub struct PlainState<'g> {
    g: &'g Graph,
    labels: Vec<u32>,
    sigma: Vec<f64>,
    scratch: std::cell::RefCell<Scratch>,
    calls: Cell<u64>,
}

#[derive(Debug, Clone)]
struct Scratch {
    weight: Vec<f64>,
    stamp: Vec<u32>,
    epoch: u32,
    touched: Vec<u32>,
}

impl<'g> PlainState<'g> {
    pub fn singleton(g: &'g Graph) -> Self {
        let n = g.n();
        PlainState {
            g,
            labels: (0..n as u32).collect(),
            sigma: g.strengths().to_vec(),
            scratch: std::cell::RefCell::new(Scratch {
                weight: vec![0.0; n],
                stamp: vec![0; n],
                epoch: 0,
                touched: Vec::new(),
            }),
            calls: Cell::new(0),
        }
    }
}

impl MoveState for PlainState<'_> {
    fn graph(&self) -> &Graph {
        self.g
    }

    fn labels(&self) -> &[u32] {
        &self.labels
    }

    fn best_move(&self, u: u32) -> Option<MoveDelta> {
        let mut sc = self.scratch.borrow_mut();
        let sc = &mut *sc;
        sc.epoch = sc.epoch.wrapping_add(1);
        if sc.epoch == 0 {
            sc.stamp.fill(0);
            sc.epoch = 1;
        }
        sc.touched.clear();
        for (v, w) in self.g.adjacency(u) {
            let c = self.labels[v as usize] as usize;
            if sc.stamp[c] != sc.epoch {
                sc.stamp[c] = sc.epoch;
                sc.weight[c] = 0.0;
                sc.touched.push(c as u32);
            }
            sc.weight[c] += w;
        }
        sc.touched.sort_unstable();
        self.calls.set(self.calls.get() + sc.touched.len() as u64);

        let lu = self.labels[u as usize];
        let own = if sc.stamp[lu as usize] == sc.epoch {
            sc.weight[lu as usize]
        } else {
            0.0
        };
        let two_w = 2.0 * self.g.total_weight();
        let s_u = self.g.strength(u);
        let mut best: Option<(u32, f64)> = None;
        for &c in &sc.touched {
            let num = if c == lu {
                0.0
            } else {
                gain_numerator(
                    two_w,
                    s_u,
                    sc.weight[c as usize],
                    own,
                    self.sigma[c as usize],
                    self.sigma[lu as usize],
                )
            };
            if best.is_none_or(|(_, b)| num > b) {
                best = Some((c, num));
            }
        }
        let w = self.g.total_weight();
        best.map(|(target, num)| MoveDelta {
            vertex: u,
            target,
            delta: num / (2.0 * w * w),
        })
    }

    fn apply_move(&mut self, u: u32, target: u32) -> Result<()> {
        let old = self.labels[u as usize];
        let adjacent = self
            .g
            .neighbors(u)
            .iter()
            .any(|&v| self.labels[v as usize] == target);
        if target == old || !adjacent {
            return Err(Error::IllegalMove { vertex: u, target });
        }
        let s_u = self.g.strength(u);
        self.sigma[old as usize] -= s_u;
        self.sigma[target as usize] += s_u;
        self.labels[u as usize] = target;
        Ok(())
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn memory_bytes(&self) -> usize {
        let n = self.g.n();
        n * (4 + 8) + n * (8 + 4) + self.scratch.borrow().touched.capacity() * 4
    }
}
