use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{path_feasible, ConstraintSpec, Graph, VertexId};
use crate::label::PathLabel;
use crate::search::{dijkstra, Admit, Arena, BestSet, Counters, Outcome, ParetoStore, Pruned, RouteResult, SearchOptions};
use crate::timer::Stopwatch;

/// Exhaustive breadth-first search over simple paths from the source, with
/// optional dominance pruning and look-ahead pruning. Exact, like
/// [`crate::csp::solve_csp`].
pub fn ebfs(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    opts: &SearchOptions,
) -> Result<RouteResult> {
    opts.validate()?;
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    if g.has_negative_path_metric() {
        return Err(Error::config("negative path metrics are only supported by solve_l1"));
    }
    let watch = Stopwatch::start(opts.time_limit);
    if src == dst {
        let mut r = RouteResult::found(PathLabel::trivial(g, src));
        r.elapsed = watch.elapsed();
        return Ok(r);
    }
    let pruned = Pruned::new(g, spec, opts.objective)?;
    if !g.reachable(src, dst, &pruned.mask) {
        let mut r = RouteResult::empty(Outcome::Unreachable);
        r.elapsed = watch.elapsed();
        return Ok(r);
    }

    let p = g.path_arity();
    let bounds: Vec<f64> = (0..p).map(|i| spec.path_bound(i)).collect();
    // Least remaining distance to the destination, one row per path metric
    // and a last row for the objective.
    let ahead: Vec<Vec<f64>> = if opts.look_ahead {
        let mut rows: Vec<Vec<f64>> = (0..p)
            .map(|i| dijkstra(g, dst, &pruned.mask, true, |e| g.edge(e).attr.path_metrics[i]).0)
            .collect();
        rows.push(dijkstra(g, dst, &pruned.mask, true, |e| opts.objective.weight(g, e)).0);
        rows
    } else {
        Vec::new()
    };

    let cap = opts.hop_cap(g);
    let mut arena = Arena::new(p);
    let mut store = (opts.dominance && opts.k == 1).then(|| ParetoStore::new(g.vertex_count()));
    let mut best = BestSet::new(opts.k, opts.objective);
    let mut counters = Counters::default();
    let mut queue = VecDeque::new();
    queue.push_back(arena.root(src));
    let mut timed_out = false;

    'search: while let Some(id) = queue.pop_front() {
        if arena.is_dead(id) || arena.depth(id) >= cap {
            continue;
        }
        let v = arena.vertex(id);
        for a in g.out_arcs(v) {
            let u = a.vertex;
            if !pruned.ok(a.edge) || arena.contains(id, u) {
                continue;
            }
            counters.traversed_paths += 1;
            if counters.traversed_paths % 4096 == 0 && watch.expired() {
                timed_out = true;
                break 'search;
            }
            let w = opts.objective.weight(g, a.edge);
            let child = arena.extend(g, id, a.edge, u, w);
            if u == dst {
                let label = PathLabel::from_edges(g, src, &arena.edges_from_root(child))?;
                if path_feasible(&label, spec)? {
                    best.offer(label);
                }
                arena.pop();
                continue;
            }
            let screened = {
                let d = arena.dist(child);
                let over_bound = opts.look_ahead
                    && ((0..p).any(|i| d[i] + ahead[i][u.index()] > bounds[i])
                        || d[p] + ahead[p][u.index()] > best.bound());
                if over_bound {
                    counters.infeasibility_pruned += 1;
                    false
                } else if store.is_some() && best.any_dominates(d) {
                    counters.dominance_pruned += 1;
                    false
                } else {
                    true
                }
            };
            let keep = screened
                && match store.as_mut() {
                    Some(store) => match store.admit(&mut arena, u, child) {
                        Admit::Dominated => {
                            counters.dominance_pruned += 1;
                            false
                        }
                        Admit::Duplicate | Admit::Inserted => true,
                    },
                    None => true,
                };
            if !keep {
                arena.pop();
                continue;
            }
            queue.push_back(child);
        }
    }

    let outcome = if timed_out {
        Outcome::Timeout
    } else if best.is_empty() {
        Outcome::NoFeasiblePath
    } else {
        Outcome::Found
    };
    Ok(RouteResult {
        outcome,
        paths: best.into_paths(),
        counters,
        elapsed: watch.elapsed(),
        hop_trace: Vec::new(),
    })
}
