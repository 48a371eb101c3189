use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// A simple path together with its accumulated cost and path metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLabel {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub cost: f64,
    pub path_dist: Vec<f64>,
}

impl PathLabel {
    /// The zero-hop path sitting at `v`.
    pub fn trivial(g: &Graph, v: VertexId) -> Self {
        PathLabel {
            vertices: alloc::vec![v],
            edges: Vec::new(),
            cost: 0.0,
            path_dist: alloc::vec![0.0; g.path_arity()],
        }
    }

    /// Builds a label by walking `edges` from `src`, summing in path order.
    pub fn from_edges(g: &Graph, src: VertexId, edges: &[EdgeId]) -> Result<Self> {
        g.check_vertex(src)?;
        let mut label = PathLabel::trivial(g, src);
        let mut at = src;
        for &e in edges {
            if e.index() >= g.edge_count() {
                return Err(Error::config("edge id out of range"));
            }
            let edge = g.edge(e);
            let next = if edge.tail == at {
                edge.head
            } else if !g.is_directed() && edge.head == at {
                edge.tail
            } else {
                return Err(Error::InvalidPath {
                    from: at.index(),
                    to: edge.head.index(),
                });
            };
            label.cost += edge.attr.cost;
            for (d, w) in label.path_dist.iter_mut().zip(&edge.attr.path_metrics) {
                *d += w;
            }
            label.edges.push(e);
            label.vertices.push(next);
            at = next;
        }
        Ok(label)
    }

    #[inline]
    pub fn hop_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("labels are never empty")
    }

    /// True when no vertex repeats.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<VertexId> = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Result ordering: cost, then fewer hops, then the vertex sequence, then
    /// the edge sequence (parallel edges).
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then(self.hop_count().cmp(&other.hop_count()))
            .then_with(|| self.vertices.cmp(&other.vertices))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

/// Path dominance over the vector `(path_dist…, cost)`: `a` is no worse in
/// every component and strictly better in at least one.
pub fn dominates(a: &PathLabel, b: &PathLabel) -> bool {
    let mut strict = a.cost < b.cost;
    if a.cost > b.cost {
        return false;
    }
    for (x, y) in a.path_dist.iter().zip(&b.path_dist) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

/// Dominance over raw distance vectors of equal length.
#[inline]
pub(crate) fn dominates_vec(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}
