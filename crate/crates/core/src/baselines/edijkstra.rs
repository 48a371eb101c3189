use crate::error::{Error, Result};
use crate::fast::tree_path;
use crate::graph::{path_feasible, ConstraintSpec, Graph, VertexId};
use crate::label::PathLabel;
use crate::search::{dijkstra, Outcome, RouteResult};
use crate::timer::Stopwatch;

/// Scalar minimized by [`edijkstra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Hops,
    Cost,
    /// The metric of the request's single path bound.
    PathMetric,
}

/// Dijkstra over the link-feasible edges without checking path bounds.
pub fn shortest_path(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    metric: Metric,
) -> Result<Option<PathLabel>> {
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    if g.has_negative_path_metric() {
        return Err(Error::config("negative path metrics are not supported by Dijkstra"));
    }
    let mask = g.feasible_edges(spec)?;
    let (_, pred) = match metric {
        Metric::Hops => dijkstra(g, src, &mask, false, |_| 1.0),
        Metric::Cost => dijkstra(g, src, &mask, false, |e| g.edge(e).attr.cost),
        Metric::PathMetric => {
            let Some((i, _)) = spec.single_path_bound()? else {
                return Err(Error::config("path metric mode needs exactly one path bound"));
            };
            dijkstra(g, src, &mask, false, |e| g.edge(e).attr.path_metrics[i])
        }
    };
    match tree_path(src, dst, &pred) {
        Some(edges) => Ok(Some(PathLabel::from_edges(g, src, &edges)?)),
        None => Ok(None),
    }
}

/// Shortest path on the link-pruned graph by `metric`, then checked
/// against the path bounds.
pub fn edijkstra(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    metric: Metric,
) -> Result<RouteResult> {
    let watch = Stopwatch::start(None);
    let mut result = match shortest_path(g, src, dst, spec, metric)? {
        None => RouteResult::empty(Outcome::Unreachable),
        Some(label) if path_feasible(&label, spec)? => RouteResult::found(label),
        Some(_) => RouteResult::empty(Outcome::NoFeasiblePath),
    };
    result.elapsed = watch.elapsed();
    Ok(result)
}
