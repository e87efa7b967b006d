//! Exact marked-vertex and marked-edge sets kept in step with a
//! [`CommunityState`].
//!
//! After `u` moves from `C_a` to `C_b` only vertices whose gains read `Σ_a`,
//! `Σ_b`, or a changed `S` value can flip, i.e. the set
//! `V_changeable = {u} ∪ C_a ∪ C_b ∪ N(C_a) ∪ N(C_b)`. Only those are
//! re-audited. All evaluations here use the uncounted audit path, since
//! the tracker belongs to the simulator and not to the simulated algorithm.

use rand::Rng;

use crate::community::CommunityState;
use crate::error::{Error, Result};

const ABSENT: u32 = u32::MAX;

/// Set of ids in `[0, capacity)` with O(1) insert, remove and uniform sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl SampleSet {
    pub fn new(capacity: usize) -> Self {
        SampleSet {
            items: Vec::new(),
            pos: vec![ABSENT; capacity],
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.pos[x as usize] != ABSENT
    }

    pub fn set(&mut self, x: u32, present: bool) {
        match (present, self.contains(x)) {
            (true, false) => {
                self.pos[x as usize] = self.items.len() as u32;
                self.items.push(x);
            }
            (false, true) => {
                let p = self.pos[x as usize] as usize;
                self.items.swap_remove(p);
                if let Some(&moved) = self.items.get(p) {
                    self.pos[moved as usize] = p as u32;
                }
                self.pos[x as usize] = ABSENT;
            }
            _ => {}
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u32> {
        if self.items.is_empty() {
            return Err(Error::EmptyMarkedSet);
        }
        Ok(self.items[rng.gen_range(0..self.items.len())])
    }

    /// Members in ascending order.
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.items.clone();
        v.sort_unstable();
        v
    }

    /// Same membership, regardless of internal order.
    pub fn same_members(&self, other: &SampleSet) -> bool {
        self.len() == other.len() && self.items.iter().all(|&x| other.contains(x))
    }
}

/// Collects `V_changeable` for a move into `out`, without duplicates.
#[derive(Debug, Clone)]
pub struct ChangeScope {
    stamp: Vec<u32>,
    epoch: u32,
    pub vertices: Vec<u32>,
}

impl ChangeScope {
    pub fn new(n: usize) -> Self {
        ChangeScope {
            stamp: vec![0; n],
            epoch: 0,
            vertices: Vec::new(),
        }
    }

    /// Fills [`ChangeScope::vertices`] for a move of `u` from `old` to `new`
    /// that has already been applied to `state`.
    pub fn collect(&mut self, state: &CommunityState<'_>, u: u32, old: u32, new: u32) -> &[u32] {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.vertices.clear();
        let g = state.graph();
        self.add(u);
        for c in [old, new] {
            for &m in state.members(c) {
                self.add(m);
                for &w in g.neighbors(m) {
                    self.add(w);
                }
            }
        }
        &self.vertices
    }

    #[inline]
    fn add(&mut self, x: u32) {
        if self.stamp[x as usize] != self.epoch {
            self.stamp[x as usize] = self.epoch;
            self.vertices.push(x);
        }
    }
}

/// Vertices with a strictly improving move.
#[derive(Debug, Clone)]
pub struct MarkedVertexSet {
    set: SampleSet,
    scope: ChangeScope,
}

impl MarkedVertexSet {
    /// Exhaustive audit of every vertex.
    pub fn build(state: &CommunityState<'_>) -> Self {
        let n = state.graph().n();
        let mut set = SampleSet::new(n);
        for u in 0..n as u32 {
            if state.audit_is_good(u) {
                set.set(u, true);
            }
        }
        MarkedVertexSet {
            set,
            scope: ChangeScope::new(n),
        }
    }

    /// Re-audits `V_changeable` after `u` moved from `old` to `new`.
    pub fn update_after_move(&mut self, state: &CommunityState<'_>, u: u32, old: u32, new: u32) {
        self.scope.collect(state, u, old, new);
        for &w in &self.scope.vertices {
            self.set.set(w, state.audit_is_good(w));
        }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, u: u32) -> bool {
        self.set.contains(u)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u32> {
        self.set.sample(rng)
    }

    pub fn members(&self) -> &SampleSet {
        &self.set
    }
}

/// Directed edges `(w, v)` for which moving `w` into `ℓ(v)` strictly
/// improves modularity. Arcs are identified by their CSR index.
#[derive(Debug, Clone)]
pub struct MarkedEdgeSet {
    set: SampleSet,
    scope: ChangeScope,
    good: Vec<u32>,
}

impl MarkedEdgeSet {
    pub fn build(state: &CommunityState<'_>) -> Self {
        let g = state.graph();
        let mut marked = MarkedEdgeSet {
            set: SampleSet::new(g.arc_count()),
            scope: ChangeScope::new(g.n()),
            good: Vec::new(),
        };
        for w in 0..g.n() as u32 {
            marked.refresh_vertex(state, w);
        }
        marked
    }

    fn refresh_vertex(&mut self, state: &CommunityState<'_>, w: u32) {
        let g = state.graph();
        self.good.clear();
        let good = &mut self.good;
        state.for_each_good_target(w, |c| good.push(c));
        for a in g.arcs(w) {
            let target_label = state.label(g.arc_target(a));
            let marked = !self.good.is_empty() && self.good.binary_search(&target_label).is_ok();
            self.set.set(a as u32, marked);
        }
    }

    /// Recomputes every out-arc of `V_changeable` after `u` moved.
    pub fn update_after_move(&mut self, state: &CommunityState<'_>, u: u32, old: u32, new: u32) {
        self.scope.collect(state, u, old, new);
        let vertices = std::mem::take(&mut self.scope.vertices);
        for &w in &vertices {
            self.refresh_vertex(state, w);
        }
        self.scope.vertices = vertices;
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains_arc(&self, arc: usize) -> bool {
        self.set.contains(arc as u32)
    }

    /// Uniform marked arc, returned as its index.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        self.set.sample(rng).map(|a| a as usize)
    }

    pub fn members(&self) -> &SampleSet {
        &self.set
    }
}
