//! Polynomial special cases of the neighborhoods method: link constraints
//! only, and link constraints plus a single path constraint.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{ConstraintSpec, EdgeId, Graph, VertexId};
use crate::label::PathLabel;
use crate::search::{dijkstra, Objective, Outcome, RouteResult};
use crate::timer::Stopwatch;

/// One vertex of a forward level: how it was reached and its distance at
/// the time it joined the level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEntry {
    pub vertex: VertexId,
    pub pred: Option<(VertexId, EdgeId)>,
    pub dist: f64,
}

/// Forward levels of the single path constraint search. Level 0 is the
/// source alone at distance zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredecessorLevels {
    levels: Vec<Vec<LevelEntry>>,
}

impl PredecessorLevels {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, k: usize) -> &[LevelEntry] {
        &self.levels[k]
    }

    pub fn entry(&self, k: usize, v: VertexId) -> Option<&LevelEntry> {
        self.levels.get(k)?.iter().find(|e| e.vertex == v)
    }

    /// Follows predecessors from `v` in level `k` back to level 0 and
    /// returns the edges in path order.
    pub fn back_track(&self, k: usize, v: VertexId) -> Option<Vec<EdgeId>> {
        let mut edges = Vec::with_capacity(k);
        let mut at = v;
        for level in (1..=k).rev() {
            let (u, e) = self.entry(level, at)?.pred?;
            edges.push(e);
            at = u;
        }
        edges.reverse();
        Some(edges)
    }
}

/// How the forward phase stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardEnd {
    /// The destination joined the last level.
    Reached,
    /// A level came out empty.
    Exhausted,
    /// Levels kept improving after `|V|` of them.
    NegativeCycle,
}

/// Forward phase for a single path bound. A neighbor joins the next level
/// when its new distance beats every distance it had before and stays
/// within the bound.
pub fn predecessor_levels(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
) -> Result<(PredecessorLevels, ForwardEnd)> {
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    let (metric, bound) = match spec.single_path_bound()? {
        Some((i, b)) => (Some(i), b),
        None => (None, f64::INFINITY),
    };
    let mask = g.feasible_edges(spec)?;
    let n = g.vertex_count();
    let mut best = vec![f64::INFINITY; n];
    best[src.index()] = 0.0;
    let mut levels = PredecessorLevels {
        levels: vec![vec![LevelEntry {
            vertex: src,
            pred: None,
            dist: 0.0,
        }]],
    };
    if src == dst {
        return Ok((levels, ForwardEnd::Reached));
    }
    let mut slot = vec![usize::MAX; n];
    loop {
        let current = levels.levels.last().expect("level 0 exists");
        let mut next: Vec<LevelEntry> = Vec::new();
        for entry in current {
            let u = entry.vertex;
            for a in g.out_arcs(u) {
                if !mask[a.edge.index()] {
                    continue;
                }
                let w = metric.map_or(0.0, |i| g.edge(a.edge).attr.path_metrics[i]);
                let dist = entry.dist + w;
                let v = a.vertex.index();
                if dist < best[v] && dist <= bound {
                    best[v] = dist;
                    let e = LevelEntry {
                        vertex: a.vertex,
                        pred: Some((u, a.edge)),
                        dist,
                    };
                    if slot[v] == usize::MAX {
                        slot[v] = next.len();
                        next.push(e);
                    } else {
                        next[slot[v]] = e;
                    }
                }
            }
        }
        for e in &next {
            slot[e.vertex.index()] = usize::MAX;
        }
        if next.is_empty() {
            return Ok((levels, ForwardEnd::Exhausted));
        }
        if levels.levels.len() == n {
            return Ok((levels, ForwardEnd::NegativeCycle));
        }
        let reached = next.iter().any(|e| e.vertex == dst);
        levels.levels.push(next);
        if reached {
            return Ok((levels, ForwardEnd::Reached));
        }
    }
}

fn missing(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Result<Outcome> {
    let mask = g.feasible_edges(spec)?;
    Ok(if g.reachable(src, dst, &mask) {
        Outcome::NoFeasiblePath
    } else {
        Outcome::Unreachable
    })
}

/// Fewest-hop simple path meeting every link constraint and at most one
/// path bound. The bound's metric may be negative; a negative cycle is
/// reported as [`Outcome::NegativeCycle`].
pub fn solve_l1(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Result<RouteResult> {
    let watch = Stopwatch::start(None);
    let (levels, end) = predecessor_levels(g, src, dst, spec)?;
    let mut result = match end {
        ForwardEnd::Reached => {
            let k = levels.len() - 1;
            let edges = levels.back_track(k, dst).expect("every entry has a predecessor");
            let label = PathLabel::from_edges(g, src, &edges)?;
            if label.is_simple() {
                RouteResult::found(label)
            } else {
                RouteResult::empty(Outcome::NegativeCycle)
            }
        }
        ForwardEnd::NegativeCycle => RouteResult::empty(Outcome::NegativeCycle),
        ForwardEnd::Exhausted => RouteResult::empty(missing(g, src, dst, spec)?),
    };
    result.counters.neighborhoods_built = levels.len().saturating_sub(1) as u64;
    result.counters.traversed_paths = levels.levels.iter().map(|l| l.len() as u64).sum();
    result.hop_trace = vec![levels.len() - 1];
    result.elapsed = watch.elapsed();
    Ok(result)
}

/// Link constraints only: fewest hops (breadth-first levels, each vertex
/// in exactly one) or least cost over the pruned graph.
pub fn solve_l(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    objective: Objective,
) -> Result<RouteResult> {
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    if spec.has_path_bounds() {
        return Err(Error::config("solve_l takes link constraints only"));
    }
    let watch = Stopwatch::start(None);
    let mask = g.feasible_edges(spec)?;
    let mut result = match objective {
        Objective::Hops => {
            let (pred, levels) = bfs_levels(g, src, &mask);
            let mut r = finish(g, src, dst, &pred)?;
            r.counters.neighborhoods_built = levels as u64;
            r.counters.traversed_paths = pred.iter().filter(|p| p.is_some()).count() as u64;
            r
        }
        Objective::Cost => {
            let (dist, pred) = dijkstra(g, src, &mask, false, |e| g.edge(e).attr.cost);
            let mut r = finish(g, src, dst, &pred)?;
            r.counters.traversed_paths = dist.iter().filter(|d| d.is_finite()).count() as u64;
            r
        }
    };
    result.elapsed = watch.elapsed();
    Ok(result)
}

fn bfs_levels(g: &Graph, src: VertexId, mask: &[bool]) -> (Vec<Option<(VertexId, EdgeId)>>, usize) {
    let n = g.vertex_count();
    let mut pred = vec![None; n];
    let mut seen = vec![false; n];
    seen[src.index()] = true;
    let mut level = vec![src];
    let mut count = 0;
    while !level.is_empty() {
        let mut next = Vec::new();
        for &u in &level {
            for a in g.out_arcs(u) {
                if mask[a.edge.index()] && !seen[a.vertex.index()] {
                    seen[a.vertex.index()] = true;
                    pred[a.vertex.index()] = Some((u, a.edge));
                    next.push(a.vertex);
                }
            }
        }
        if !next.is_empty() {
            count += 1;
        }
        level = next;
    }
    (pred, count)
}

/// Builds the result from a predecessor tree rooted at `src`.
pub(crate) fn finish(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    pred: &[Option<(VertexId, EdgeId)>],
) -> Result<RouteResult> {
    match tree_path(src, dst, pred) {
        Some(edges) => Ok(RouteResult::found(PathLabel::from_edges(g, src, &edges)?)),
        None => Ok(RouteResult::empty(Outcome::Unreachable)),
    }
}

pub(crate) fn tree_path(src: VertexId, dst: VertexId, pred: &[Option<(VertexId, EdgeId)>]) -> Option<Vec<EdgeId>> {
    let mut edges = Vec::new();
    let mut at = dst;
    while at != src {
        let (u, e) = pred[at.index()]?;
        edges.push(e);
        at = u;
        if edges.len() > pred.len() {
            return None;
        }
    }
    edges.reverse();
    Some(edges)
}
