use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{ConstraintSpec, EdgeId, Graph, VertexId};
use crate::label::PathLabel;
use crate::search::{Outcome, RouteResult};
use crate::timer::Stopwatch;

/// Iterative Bellman-Ford: round `h` holds the least bounded-metric
/// distance over walks of at most `h` hops, and the first round whose
/// destination distance meets the bound yields a fewest-hop feasible path.
pub fn ibf(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Result<RouteResult> {
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    if g.has_negative_path_metric() {
        return Err(Error::config("negative path metrics are only supported by solve_l1"));
    }
    let watch = Stopwatch::start(None);
    let (metric, bound) = match spec.single_path_bound()? {
        Some((i, b)) => (Some(i), b),
        None => (None, f64::INFINITY),
    };
    let mask = g.feasible_edges(spec)?;
    let n = g.vertex_count();
    let weight = |e: EdgeId| metric.map_or(0.0, |i| g.edge(e).attr.path_metrics[i]);

    let mut dist = vec![f64::INFINITY; n];
    dist[src.index()] = 0.0;
    let mut rounds: Vec<Vec<Option<(VertexId, EdgeId)>>> = Vec::new();
    let mut relaxed = 0u64;
    let meets = |d: f64| d.is_finite() && d <= bound;
    let mut found = meets(dist[dst.index()]);

    while !found && rounds.len() + 1 < n {
        let prev = dist.clone();
        let mut pred = vec![None; n];
        let mut changed = false;
        for (i, e) in g.edges().iter().enumerate() {
            if !mask[i] {
                continue;
            }
            let id = EdgeId(i as u32);
            let w = weight(id);
            let mut relax = |u: VertexId, v: VertexId| {
                let d = prev[u.index()] + w;
                if d < dist[v.index()] {
                    dist[v.index()] = d;
                    pred[v.index()] = Some((u, id));
                    changed = true;
                    relaxed += 1;
                }
            };
            relax(e.tail, e.head);
            if !g.is_directed() {
                relax(e.head, e.tail);
            }
        }
        rounds.push(pred);
        found = meets(dist[dst.index()]);
        if !changed {
            break;
        }
    }

    let mut result = if found {
        RouteResult::found(PathLabel::from_edges(g, src, &walk_back(&rounds, dst))?)
    } else if g.reachable(src, dst, &mask) {
        RouteResult::empty(Outcome::NoFeasiblePath)
    } else {
        RouteResult::empty(Outcome::Unreachable)
    };
    result.counters.traversed_paths = relaxed;
    result.counters.neighborhoods_built = rounds.len() as u64;
    result.elapsed = watch.elapsed();
    Ok(result)
}

fn walk_back(rounds: &[Vec<Option<(VertexId, EdgeId)>>], dst: VertexId) -> Vec<EdgeId> {
    let mut edges = Vec::new();
    let mut at = dst;
    for round in rounds.iter().rev() {
        if let Some((u, e)) = round[at.index()] {
            edges.push(e);
            at = u;
        }
    }
    edges.reverse();
    edges
}
