//! Weighted undirected graphs in compressed adjacency form.
//!
//! Adjacency lists are sorted by neighbour id so that the position of a
//! neighbour can be found by binary search. Graphs produced by
//! [`aggregate`] may carry a per-vertex self-loop weight (the weight
//! internal to a contracted community); it is stored beside the adjacency
//! lists rather than inside them, so adjacency never contains `u` itself.

mod aggregate;
mod fcs;
mod io;

pub use aggregate::{aggregate, Aggregation};
pub use fcs::{community_of, generate_fcs, generate_fcs_labeled, FcsConfig};
pub use io::{
    load_edge_list, load_edge_list_with_meta, parse_edge_list, read_edge_list, write_edge_list,
    EdgeListMeta,
};

use crate::error::{Error, Result};

/// Immutable weighted undirected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    loops: Vec<f64>,
    strength: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// Builds a graph on `n` vertices from undirected edges.
    ///
    /// Each edge must appear once (in either orientation), must not be a
    /// self-loop, and must have a strictly positive finite weight.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, f64)>,
    {
        let mut list: Vec<(u32, u32, f64)> = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight { u, v, weight: w });
            }
            list.push((u.min(v), u.max(v), w));
        }
        list.sort_unstable_by_key(|&(u, v, _)| (u, v));
        if let Some(pair) = list
            .windows(2)
            .find(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1))
        {
            return Err(Error::DuplicateEdge {
                u: pair[0].0,
                v: pair[0].1,
            });
        }
        Ok(Self::from_sorted_unique(n, &list, vec![0.0; n]))
    }

    /// Assembles the compressed form from deduplicated `(u < v)` edges.
    pub(crate) fn from_sorted_unique(n: usize, edges: &[(u32, u32, f64)], loops: Vec<f64>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v, _) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let arcs = offsets[n];
        let mut targets = vec![0u32; arcs];
        let mut weights = vec![0f64; arcs];
        let mut fill: Vec<usize> = offsets[..n].to_vec();
        // Edges are sorted by (u, v). Appending every smaller endpoint first
        // and every larger endpoint second leaves each list sorted.
        for &(u, v, w) in edges {
            let (u, v) = (u as usize, v as usize);
            targets[fill[v]] = u as u32;
            weights[fill[v]] = w;
            fill[v] += 1;
        }
        for &(u, v, w) in edges {
            let (u, v) = (u as usize, v as usize);
            targets[fill[u]] = v as u32;
            weights[fill[u]] = w;
            fill[u] += 1;
        }
        let strength: Vec<f64> = (0..n)
            .map(|u| weights[offsets[u]..offsets[u + 1]].iter().sum::<f64>() + loops[u])
            .collect();
        let total_weight = strength.iter().sum::<f64>() / 2.0;
        Graph {
            offsets,
            targets,
            weights,
            loops,
            strength,
            total_weight,
        }
    }

    pub fn n(&self) -> usize {
        self.strength.len()
    }

    /// Number of undirected edges, self-loop weights excluded.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Number of directed arcs, `2 |E|`.
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn degree(&self, u: u32) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as u32)
            .map(|u| self.degree(u))
            .max()
            .unwrap_or(0)
    }

    /// Sorted neighbour ids of `u`.
    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.targets[self.arcs(u)]
    }

    /// Edge weights aligned with [`Graph::neighbors`].
    pub fn neighbor_weights(&self, u: u32) -> &[f64] {
        &self.weights[self.arcs(u)]
    }

    /// `(neighbour, weight)` pairs of `u` in ascending neighbour order.
    pub fn adjacency(&self, u: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.neighbors(u)
            .iter()
            .copied()
            .zip(self.neighbor_weights(u).iter().copied())
    }

    /// Range of arc ids owned by `u`. Arc `a` points from `u` to `arc_target(a)`.
    pub fn arcs(&self, u: u32) -> std::ops::Range<usize> {
        let u = u as usize;
        self.offsets[u]..self.offsets[u + 1]
    }

    pub fn arc_target(&self, arc: usize) -> u32 {
        self.targets[arc]
    }

    pub fn arc_source(&self, arc: usize) -> u32 {
        (self.offsets.partition_point(|&o| o <= arc) - 1) as u32
    }

    /// Self-loop weight `A_uu` carried by contracted vertices (zero on input graphs).
    pub fn loop_weight(&self, u: u32) -> f64 {
        self.loops[u as usize]
    }

    /// `s_u`: adjacency weights plus the self-loop weight.
    pub fn strength(&self, u: u32) -> f64 {
        self.strength[u as usize]
    }

    pub fn strengths(&self) -> &[f64] {
        &self.strength
    }

    /// `W`, half the sum of all strengths.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Undirected edges as `(u, v, w)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.adjacency(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Position `j` of `v` in the adjacency list of `u`, found by binary search.
    pub fn neighbor_index(&self, u: u32, v: u32) -> Result<Option<usize>> {
        if u as usize >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n(),
            });
        }
        Ok(self.neighbors(u).binary_search(&v).ok())
    }

    /// Weight `A_uv`, zero when the vertices are not adjacent.
    pub fn weight(&self, u: u32, v: u32) -> f64 {
        match self.neighbors(u).binary_search(&v) {
            Ok(j) => self.neighbor_weights(u)[j],
            Err(_) if u == v => self.loop_weight(u),
            Err(_) => 0.0,
        }
    }
}
