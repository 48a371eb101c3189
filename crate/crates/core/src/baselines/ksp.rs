use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::error::{Error, Result};
use crate::graph::{ConstraintSpec, EdgeId, Graph, VertexId};
use crate::label::PathLabel;
use crate::search::{Key, Objective};

/// The `k` shortest simple paths by `objective` over the link-feasible
/// edges, ordered by objective, hops, vertex sequence and edge sequence.
/// Returns fewer when fewer exist.
pub fn ksp(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    k: usize,
    objective: Objective,
) -> Result<Vec<PathLabel>> {
    if k == 0 {
        return Err(Error::config("k must be at least 1"));
    }
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    let mask = g.feasible_edges(spec)?;
    let n = g.vertex_count();
    let rank = |a: &PathLabel, b: &PathLabel| -> Ordering {
        objective
            .value(a)
            .total_cmp(&objective.value(b))
            .then(a.hop_count().cmp(&b.hop_count()))
            .then_with(|| a.vertices.cmp(&b.vertices))
            .then_with(|| a.edges.cmp(&b.edges))
    };
    let tier = |a: &PathLabel| (objective.value(a), a.hop_count());

    let mut accepted: Vec<PathLabel> = Vec::new();
    let mut pool: Vec<PathLabel> = Vec::new();
    let no_vertex = vec![false; n];
    let no_edge = vec![false; g.edge_count()];
    if let Some(edges) = spur(g, src, dst, &mask, &no_vertex, &no_edge, objective) {
        pool.push(PathLabel::from_edges(g, src, &edges)?);
    }

    while let Some(pos) = (0..pool.len()).min_by(|&a, &b| rank(&pool[a], &pool[b])) {
        // Keep going past k while the next path ties the k-th on
        // (objective, hops) so the final sort sees every tie.
        if accepted.len() >= k && tier(&pool[pos]) != tier(&accepted[k - 1]) {
            break;
        }
        let path = pool.swap_remove(pos);
        let mut banned_vertex = vec![false; n];
        for i in 0..path.hop_count() {
            let spur_at = path.vertices[i];
            let root = &path.edges[..i];
            let mut banned_edge = vec![false; g.edge_count()];
            for other in accepted.iter().chain(core::iter::once(&path)) {
                if other.edges.len() > i && other.edges[..i] == *root {
                    banned_edge[other.edges[i].index()] = true;
                }
            }
            if let Some(tail) = spur(g, spur_at, dst, &mask, &banned_vertex, &banned_edge, objective) {
                let mut edges = root.to_vec();
                edges.extend(tail);
                let candidate = PathLabel::from_edges(g, src, &edges)?;
                let known = |l: &PathLabel| l.edges == candidate.edges;
                if !pool.iter().any(known) && !accepted.iter().any(known) && candidate.edges != path.edges {
                    pool.push(candidate);
                }
            }
            banned_vertex[spur_at.index()] = true;
        }
        accepted.push(path);
    }
    accepted.sort_by(|a, b| rank(a, b));
    accepted.truncate(k);
    Ok(accepted)
}

/// Dijkstra on `(objective, hops)` pairs avoiding banned vertices and edges.
fn spur(
    g: &Graph,
    from: VertexId,
    to: VertexId,
    mask: &[bool],
    banned_vertex: &[bool],
    banned_edge: &[bool],
    objective: Objective,
) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut dist = vec![(f64::INFINITY, usize::MAX); n];
    let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[from.index()] = (0.0, 0);
    heap.push(Reverse((Key(0.0), 0usize, from)));
    while let Some(Reverse((Key(d), h, u))) = heap.pop() {
        if done[u.index()] {
            continue;
        }
        done[u.index()] = true;
        if u == to {
            break;
        }
        for a in g.out_arcs(u) {
            let v = a.vertex;
            if !mask[a.edge.index()] || banned_edge[a.edge.index()] || banned_vertex[v.index()] {
                continue;
            }
            let cand = (d + objective.weight(g, a.edge), h + 1);
            let cur = dist[v.index()];
            if cand.0 < cur.0 || (cand.0 == cur.0 && cand.1 < cur.1) {
                dist[v.index()] = cand;
                pred[v.index()] = Some((u, a.edge));
                heap.push(Reverse((Key(cand.0), cand.1, v)));
            }
        }
    }
    if !done[to.index()] {
        return None;
    }
    let mut edges = Vec::new();
    let mut at = to;
    while at != from {
        let (u, e) = pred[at.index()]?;
        edges.push(e);
        at = u;
    }
    edges.reverse();
    Some(edges)
}
