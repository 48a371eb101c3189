#![allow(dead_code)]

use nmroute_core::{BoundKind, ConstraintSpec, EdgeAttr, EdgeId, Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const X: VertexId = VertexId(0);
pub const A: VertexId = VertexId(1);
pub const B: VertexId = VertexId(2);
pub const Y: VertexId = VertexId(3);

/// Four-node running example. Link metric 0 is the bandwidth (equal to the
/// capacity); path metrics are (delay, cost) and the edge cost equals the
/// cost metric.
pub fn figure3() -> Graph {
    let mut g = Graph::new(false, 4, 1, 2);
    for (u, v, bw, delay, cost) in [
        (X, A, 5.0, 5.0, 4.0),
        (A, Y, 5.0, 1.0, 1.0),
        (X, B, 5.0, 1.0, 2.0),
        (B, A, 5.0, 2.0, 1.0),
        (B, Y, 3.0, 1.0, 3.0),
    ] {
        g.add_edge(u.index(), v.index(), EdgeAttr::new(bw, vec![bw], vec![delay, cost], cost))
            .unwrap();
    }
    g
}

pub fn figure3_spec(bw: f64, delay: f64, cost: f64) -> ConstraintSpec {
    ConstraintSpec::new(bw)
        .unwrap()
        .with_link_bound(0, BoundKind::AtLeast, bw)
        .with_path_bounds(vec![delay, cost])
        .unwrap()
}

pub fn path(vs: &[VertexId]) -> Vec<VertexId> {
    vs.to_vec()
}

/// Undirected multigraph with integer attributes: capacity and bandwidth in
/// 1..=10, delay in 1..=10, cost in 1..=10 (edge cost equals the cost metric).
pub fn random_graph(seed: u64, max_n: usize) -> (Graph, ConstraintSpec, VertexId, VertexId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=max_n);
    let m = (n * 2).min(n * (n - 1) / 2 + 2);
    let mut g = Graph::new(false, n, 1, 2);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let bw = rng.gen_range(1..=10) as f64;
        let delay = rng.gen_range(1..=10) as f64;
        let cost = rng.gen_range(1..=10) as f64;
        g.add_edge(u, v, EdgeAttr::new(bw, vec![bw], vec![delay, cost], cost)).unwrap();
    }
    let src = VertexId::new(rng.gen_range(0..n));
    let mut dst = VertexId::new(rng.gen_range(0..n - 1));
    if dst >= src {
        dst = VertexId(dst.0 + 1);
    }
    let demand = rng.gen_range(1..=4) as f64;
    let spec = ConstraintSpec::new(demand)
        .unwrap()
        .with_link_bound(0, BoundKind::AtLeast, demand)
        .with_path_bounds(vec![rng.gen_range(4..=25) as f64, rng.gen_range(4..=30) as f64])
        .unwrap();
    (g, spec, src, dst)
}

/// Same instance with every edge cost set to one.
pub fn unit_costs(g: &Graph) -> Graph {
    let mut h = Graph::new(g.is_directed(), g.vertex_count(), g.link_arity(), g.path_arity());
    for e in g.edges() {
        let mut attr = e.attr.clone();
        attr.cost = 1.0;
        h.add_edge(e.tail.index(), e.head.index(), attr).unwrap();
    }
    h
}

#[derive(Debug, Clone)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub cost: f64,
    pub dist: Vec<f64>,
}

impl Walk {
    pub fn hops(&self) -> usize {
        self.edges.len()
    }
}

fn link_ok(g: &Graph, e: EdgeId, spec: &ConstraintSpec) -> bool {
    let attr = &g.edge(e).attr;
    g.residual(e) >= spec.demand()
        && spec.link_bounds().iter().all(|b| {
            let x = attr.link_metrics[b.metric];
            match b.kind {
                BoundKind::AtLeast => x >= b.bound,
                BoundKind::AtMost => x <= b.bound,
            }
        })
}

/// Every simple path over link-feasible edges, by depth-first enumeration.
pub fn all_simple_paths(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut stack = vec![Walk {
        vertices: vec![src],
        edges: vec![],
        cost: 0.0,
        dist: vec![0.0; g.path_arity()],
    }];
    while let Some(w) = stack.pop() {
        let at = *w.vertices.last().unwrap();
        if at == dst {
            out.push(w);
            continue;
        }
        for (i, e) in g.edges().iter().enumerate() {
            let next = if e.tail == at {
                e.head
            } else if !g.is_directed() && e.head == at {
                e.tail
            } else {
                continue;
            };
            let id = EdgeId(i as u32);
            if w.vertices.contains(&next) || !link_ok(g, id, spec) {
                continue;
            }
            let mut x = w.clone();
            x.vertices.push(next);
            x.edges.push(id);
            x.cost += e.attr.cost;
            for (d, m) in x.dist.iter_mut().zip(&e.attr.path_metrics) {
                *d += m;
            }
            stack.push(x);
        }
    }
    out
}

pub fn feasible(w: &Walk, spec: &ConstraintSpec) -> bool {
    w.dist
        .iter()
        .enumerate()
        .all(|(i, &d)| d <= spec.path_bounds().get(i).copied().unwrap_or(f64::INFINITY))
}

pub fn feasible_paths(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Vec<Walk> {
    all_simple_paths(g, src, dst, spec)
        .into_iter()
        .filter(|w| feasible(w, spec))
        .collect()
}

pub fn oracle_min_cost(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Option<f64> {
    feasible_paths(g, src, dst, spec)
        .iter()
        .map(|w| w.cost)
        .min_by(f64::total_cmp)
}

pub fn oracle_min_hops(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Option<usize> {
    feasible_paths(g, src, dst, spec).iter().map(Walk::hops).min()
}

/// Paths sorted by (cost, hops, vertices, edges).
pub fn oracle_ranked(mut paths: Vec<Walk>) -> Vec<Walk> {
    paths.sort_by(|a, b| {
        a.cost
            .total_cmp(&b.cost)
            .then(a.hops().cmp(&b.hops()))
            .then_with(|| a.vertices.cmp(&b.vertices))
            .then_with(|| a.edges.cmp(&b.edges))
    });
    paths
}
