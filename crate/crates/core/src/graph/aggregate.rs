use super::Graph;
use crate::error::{Error, Result};

/// Coarse graph produced by contracting every community to one vertex.
#[derive(Debug, Clone)]
pub struct Aggregation {
    pub graph: Graph,
    /// Coarse vertex of each fine vertex.
    pub vertex_map: Vec<u32>,
}

/// Contracts each non-empty community of `labels` into a single vertex.
///
/// Coarse vertices are numbered by ascending community label. Cross edges
/// are summed per community pair. Weight internal to a community becomes the
/// coarse vertex's loop weight (`Σ_{x,y∈C} A_xy` over ordered pairs, plus
/// inherited loops), so strengths and `W` are preserved while adjacency
/// stays loop-free.
pub fn aggregate(g: &Graph, labels: &[u32]) -> Result<Aggregation> {
    let n = g.n();
    if labels.len() != n {
        return Err(Error::LabelsLength {
            expected: n,
            got: labels.len(),
        });
    }
    let bound = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut coarse_id = vec![u32::MAX; bound];
    for &l in labels {
        coarse_id[l as usize] = 0;
    }
    let mut k = 0u32;
    for slot in coarse_id.iter_mut().filter(|s| **s == 0) {
        *slot = k;
        k += 1;
    }
    let vertex_map: Vec<u32> = labels.iter().map(|&l| coarse_id[l as usize]).collect();

    let mut loops = vec![0.0; k as usize];
    let mut cross: Vec<(u32, u32, f64)> = Vec::with_capacity(g.edge_count());
    for u in 0..n as u32 {
        let a = vertex_map[u as usize];
        loops[a as usize] += g.loop_weight(u);
        for (v, w) in g.adjacency(u).filter(|&(v, _)| v > u) {
            let b = vertex_map[v as usize];
            if a == b {
                loops[a as usize] += 2.0 * w;
            } else {
                cross.push((a.min(b), a.max(b), w));
            }
        }
    }
    cross.sort_unstable_by_key(|&(a, b, _)| (a, b));
    let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(cross.len());
    for (a, b, w) in cross {
        match merged.last_mut() {
            Some(last) if (last.0, last.1) == (a, b) => last.2 += w,
            _ => merged.push((a, b, w)),
        }
    }
    Ok(Aggregation {
        graph: Graph::from_sorted_unique(k as usize, &merged, loops),
        vertex_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn triangle_pair_and_single() {
        let agg = aggregate(&triangle(), &[5, 5, 9]).unwrap();
        let h = &agg.graph;
        assert_eq!(h.n(), 2);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.weight(0, 1), 2.0);
        assert_eq!(h.loop_weight(0), 2.0);
        assert_eq!(h.strength(0), 4.0);
        assert_eq!(h.total_weight(), 3.0);
        assert_eq!(agg.vertex_map, vec![0, 0, 1]);
    }

    #[test]
    fn one_community() {
        let agg = aggregate(&triangle(), &[1, 1, 1]).unwrap();
        assert_eq!(agg.graph.n(), 1);
        assert_eq!(agg.graph.edge_count(), 0);
        assert_eq!(agg.graph.total_weight(), 3.0);
    }

    #[test]
    fn singletons_are_identity() {
        let g = triangle();
        let agg = aggregate(&g, &[0, 1, 2]).unwrap();
        assert_eq!(agg.graph, g);
    }

    #[test]
    fn label_length_checked() {
        assert!(matches!(
            aggregate(&triangle(), &[0, 1]),
            Err(Error::LabelsLength {
                expected: 3,
                got: 2
            })
        ));
    }
}
