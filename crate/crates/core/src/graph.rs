//! Substrate network model, routing requests and path arithmetic.
//!
//! A [`Graph`] is a directed or undirected multigraph. Undirected links are
//! stored once and exposed as two arcs that share the same residual capacity
//! cell. Every edge carries a capacity, `l` link metrics (checked hop by hop),
//! `p` additive path metrics (summed end to end) and a per-unit cost.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::label::PathLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(index: usize) -> Self {
        VertexId::new(index)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeAttr {
    pub capacity: f64,
    pub link_metrics: Vec<f64>,
    pub path_metrics: Vec<f64>,
    pub cost: f64,
}

impl EdgeAttr {
    pub fn new(capacity: f64, link_metrics: Vec<f64>, path_metrics: Vec<f64>, cost: f64) -> Self {
        EdgeAttr {
            capacity,
            link_metrics,
            path_metrics,
            cost,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub attr: EdgeAttr,
}

impl Edge {
    /// The endpoint opposite to `v` (for undirected traversal).
    #[inline]
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// One arc of an adjacency list: the vertex on the other side and the edge used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adjacent {
    pub vertex: VertexId,
    pub edge: EdgeId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    directed: bool,
    link_arity: usize,
    path_arity: usize,
    edges: Vec<Edge>,
    residual: Vec<f64>,
    out: Vec<Vec<Adjacent>>,
    inc: Vec<Vec<Adjacent>>,
    negative_path_metric: bool,
    positions: Option<Vec<(f64, f64)>>,
    propagation_rate: Option<f64>,
    vertex_capacity: Option<Vec<f64>>,
    names: Option<Vec<String>>,
}

impl Graph {
    pub fn new(directed: bool, vertex_count: usize, link_arity: usize, path_arity: usize) -> Self {
        Graph {
            directed,
            link_arity,
            path_arity,
            edges: Vec::new(),
            residual: Vec::new(),
            out: vec![Vec::new(); vertex_count],
            inc: if directed {
                vec![Vec::new(); vertex_count]
            } else {
                Vec::new()
            },
            negative_path_metric: false,
            positions: None,
            propagation_rate: None,
            vertex_capacity: None,
            names: None,
        }
    }

    /// Adds an edge and returns its id. Self-loops, arity mismatches,
    /// non-finite values, negative capacities and negative costs are rejected.
    /// Negative path metrics are stored but only accepted by solvers that
    /// detect negative cycles.
    pub fn add_edge(&mut self, u: usize, v: usize, attr: EdgeAttr) -> Result<EdgeId> {
        let n = self.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if u == v {
            return Err(Error::config("self-loop edges are not allowed"));
        }
        if attr.link_metrics.len() != self.link_arity {
            return Err(Error::ArityMismatch {
                expected: self.link_arity,
                found: attr.link_metrics.len(),
            });
        }
        if attr.path_metrics.len() != self.path_arity {
            return Err(Error::ArityMismatch {
                expected: self.path_arity,
                found: attr.path_metrics.len(),
            });
        }
        if !(attr.capacity.is_finite() && attr.capacity >= 0.0) {
            return Err(Error::config("capacity must be finite and non-negative"));
        }
        if !(attr.cost.is_finite() && attr.cost >= 0.0) {
            return Err(Error::config("cost must be finite and non-negative"));
        }
        if attr.link_metrics.iter().any(|x| !x.is_finite()) {
            return Err(Error::config("link metrics must be finite"));
        }
        if attr.path_metrics.iter().any(|x| !x.is_finite()) {
            return Err(Error::config("path metrics must be finite"));
        }
        if attr.path_metrics.iter().any(|&x| x < 0.0) {
            self.negative_path_metric = true;
        }

        let id = EdgeId(self.edges.len() as u32);
        let (tail, head) = (VertexId::new(u), VertexId::new(v));
        self.residual.push(attr.capacity);
        self.edges.push(Edge { tail, head, attr });
        self.out[u].push(Adjacent { vertex: head, edge: id });
        if self.directed {
            self.inc[v].push(Adjacent { vertex: tail, edge: id });
        } else {
            self.out[v].push(Adjacent { vertex: tail, edge: id });
        }
        Ok(id)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn link_arity(&self) -> usize {
        self.link_arity
    }

    pub fn path_arity(&self) -> usize {
        self.path_arity
    }

    pub fn has_negative_path_metric(&self) -> bool {
        self.negative_path_metric
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    /// Outgoing arcs of `v` (all incident arcs for undirected graphs).
    pub fn out_arcs(&self, v: VertexId) -> &[Adjacent] {
        &self.out[v.index()]
    }

    /// Incoming arcs of `v`, each pointing at the arc's tail.
    pub fn in_arcs(&self, v: VertexId) -> &[Adjacent] {
        if self.directed {
            &self.inc[v.index()]
        } else {
            &self.out[v.index()]
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v.index()))
        }
    }

    /// Mean number of neighbors per vertex, `2|E|/|V|` for undirected graphs
    /// and the mean out-degree `|E|/|V|` for directed ones.
    pub fn mean_degree(&self) -> f64 {
        let n = self.vertex_count().max(1) as f64;
        let m = self.edge_count() as f64;
        if self.directed {
            m / n
        } else {
            2.0 * m / n
        }
    }

    // Residual capacity bookkeeping.

    pub fn residual(&self, e: EdgeId) -> f64 {
        self.residual[e.index()]
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residual
    }

    /// Per-edge utilization `1 - residual / capacity` (zero for zero-capacity edges).
    pub fn utilizations(&self) -> Vec<f64> {
        self.edges
            .iter()
            .zip(&self.residual)
            .map(|(e, &r)| {
                if e.attr.capacity > 0.0 {
                    1.0 - r / e.attr.capacity
                } else {
                    0.0
                }
            })
            .collect()
    }

    /// Takes `amount` from every listed edge, or nothing if any edge lacks it.
    pub fn reserve(&mut self, edges: &[EdgeId], amount: f64) -> Result<()> {
        if !(amount.is_finite() && amount >= 0.0) {
            return Err(Error::config("reservation must be finite and non-negative"));
        }
        // A path may not list an edge twice, but a caller could.
        let mut need: Vec<(EdgeId, f64)> = Vec::with_capacity(edges.len());
        for &e in edges {
            match need.iter_mut().find(|(x, _)| *x == e) {
                Some((_, a)) => *a += amount,
                None => need.push((e, amount)),
            }
        }
        for &(e, a) in &need {
            if self.residual[e.index()] < a {
                return Err(Error::config("insufficient residual capacity"));
            }
        }
        for (e, a) in need {
            self.residual[e.index()] -= a;
        }
        Ok(())
    }

    /// Returns `amount` to every listed edge, clamped at capacity.
    pub fn release(&mut self, edges: &[EdgeId], amount: f64) {
        for &e in edges {
            let cap = self.edges[e.index()].attr.capacity;
            let r = &mut self.residual[e.index()];
            *r = (*r + amount).min(cap);
        }
    }

    /// Restores residual capacities saved from [`Graph::residuals`].
    pub fn set_residuals(&mut self, residuals: &[f64]) -> Result<()> {
        if residuals.len() != self.edge_count() {
            return Err(Error::ArityMismatch {
                expected: self.edge_count(),
                found: residuals.len(),
            });
        }
        if residuals
            .iter()
            .zip(&self.edges)
            .any(|(&r, e)| !(r >= 0.0 && r <= e.attr.capacity))
        {
            return Err(Error::config("residual capacity outside [0, capacity]"));
        }
        self.residual.copy_from_slice(residuals);
        Ok(())
    }

    pub fn reset_residuals(&mut self) {
        for (r, e) in self.residual.iter_mut().zip(&self.edges) {
            *r = e.attr.capacity;
        }
    }

    // Optional vertex attributes.

    pub fn positions(&self) -> Option<&[(f64, f64)]> {
        self.positions.as_deref()
    }

    pub fn propagation_rate(&self) -> Option<f64> {
        self.propagation_rate
    }

    /// Attaches plane coordinates and the propagation rate used to derive delays.
    pub fn set_plane(&mut self, positions: Vec<(f64, f64)>, rate: f64) -> Result<()> {
        if positions.len() != self.vertex_count() {
            return Err(Error::ArityMismatch {
                expected: self.vertex_count(),
                found: positions.len(),
            });
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::config("propagation rate must be positive"));
        }
        self.positions = Some(positions);
        self.propagation_rate = Some(rate);
        Ok(())
    }

    pub fn vertex_capacities(&self) -> Option<&[f64]> {
        self.vertex_capacity.as_deref()
    }

    pub fn set_vertex_capacities(&mut self, caps: Vec<f64>) -> Result<()> {
        if caps.len() != self.vertex_count() {
            return Err(Error::ArityMismatch {
                expected: self.vertex_count(),
                found: caps.len(),
            });
        }
        if caps.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::config("vertex capacities must be finite and non-negative"));
        }
        self.vertex_capacity = Some(caps);
        Ok(())
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.vertex_count() {
            return Err(Error::ArityMismatch {
                expected: self.vertex_count(),
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(())
    }

    /// Looks a vertex up by name, falling back to a numeric index.
    pub fn find_vertex(&self, key: &str) -> Option<VertexId> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == key) {
                return Some(VertexId::new(i));
            }
        }
        key.parse::<usize>()
            .ok()
            .filter(|&i| i < self.vertex_count())
            .map(VertexId::new)
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match &self.names {
            Some(names) => names[v.index()].clone(),
            None => alloc::format!("{}", v.0),
        }
    }

    // Query helpers.

    /// Link feasibility of every edge under `spec`, indexed by edge id.
    pub fn feasible_edges(&self, spec: &ConstraintSpec) -> Result<Vec<bool>> {
        spec.check_arity(self)?;
        Ok(self
            .edges
            .iter()
            .zip(&self.residual)
            .map(|(e, &r)| link_ok(&e.attr, spec, r))
            .collect())
    }

    /// Whether `dst` can be reached from `src` over edges allowed by `mask`.
    pub fn reachable(&self, src: VertexId, dst: VertexId, mask: &[bool]) -> bool {
        if src == dst {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        seen[src.index()] = true;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for a in self.out_arcs(u) {
                if mask[a.edge.index()] && !seen[a.vertex.index()] {
                    if a.vertex == dst {
                        return true;
                    }
                    seen[a.vertex.index()] = true;
                    queue.push_back(a.vertex);
                }
            }
        }
        false
    }

    /// Whether every vertex can reach every other (undirected sense for
    /// undirected graphs, weak connectivity is not considered for directed).
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mask = vec![true; self.edge_count()];
        let mut seen = vec![false; n];
        let mut stack = vec![VertexId(0)];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for a in self.out_arcs(u) {
                if mask[a.edge.index()] && !seen[a.vertex.index()] {
                    seen[a.vertex.index()] = true;
                    count += 1;
                    stack.push(a.vertex);
                }
            }
        }
        count == n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBound {
    pub metric: usize,
    pub kind: BoundKind,
    pub bound: f64,
}

impl LinkBound {
    pub fn holds(&self, value: f64) -> bool {
        match self.kind {
            BoundKind::AtLeast => value >= self.bound,
            BoundKind::AtMost => value <= self.bound,
        }
    }
}

/// A routing request: the demand reserved on every edge of the path, link
/// bounds checked per edge, and upper bounds on the additive path metrics.
///
/// An empty `path_bounds` list means "no path constraints"; otherwise it must
/// have one entry per path metric of the graph (use `f64::INFINITY` for an
/// unconstrained metric).
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpec {
    demand: f64,
    link_bounds: Vec<LinkBound>,
    path_bounds: Vec<f64>,
}

impl ConstraintSpec {
    pub fn new(demand: f64) -> Result<Self> {
        if !(demand.is_finite() && demand > 0.0) {
            return Err(Error::config("demand must be a positive finite number"));
        }
        Ok(ConstraintSpec {
            demand,
            link_bounds: Vec::new(),
            path_bounds: Vec::new(),
        })
    }

    pub fn with_link_bound(mut self, metric: usize, kind: BoundKind, bound: f64) -> Self {
        self.link_bounds.push(LinkBound { metric, kind, bound });
        self
    }

    pub fn with_path_bounds(mut self, bounds: Vec<f64>) -> Result<Self> {
        if bounds.iter().any(|b| b.is_nan()) {
            return Err(Error::config("path bounds must not be NaN"));
        }
        self.path_bounds = bounds;
        Ok(self)
    }

    pub fn demand(&self) -> f64 {
        self.demand
    }

    pub fn link_bounds(&self) -> &[LinkBound] {
        &self.link_bounds
    }

    pub fn path_bounds(&self) -> &[f64] {
        &self.path_bounds
    }

    /// Bound on path metric `i`; `+inf` when the spec has no path bounds.
    #[inline]
    pub fn path_bound(&self, i: usize) -> f64 {
        self.path_bounds.get(i).copied().unwrap_or(f64::INFINITY)
    }

    pub fn has_path_bounds(&self) -> bool {
        self.path_bounds.iter().any(|b| b.is_finite())
    }

    /// The single finite path bound as `(metric, bound)`, if there is at most
    /// one; `Ok(None)` when none is finite.
    pub fn single_path_bound(&self) -> Result<Option<(usize, f64)>> {
        let mut finite = self
            .path_bounds
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_finite());
        let first = finite.next().map(|(i, &b)| (i, b));
        if finite.next().is_some() {
            return Err(Error::config("at most one finite path bound is allowed here"));
        }
        Ok(first)
    }

    pub fn check_arity(&self, g: &Graph) -> Result<()> {
        if !self.path_bounds.is_empty() && self.path_bounds.len() != g.path_arity() {
            return Err(Error::ArityMismatch {
                expected: g.path_arity(),
                found: self.path_bounds.len(),
            });
        }
        for b in &self.link_bounds {
            if b.metric >= g.link_arity() {
                return Err(Error::ArityMismatch {
                    expected: g.link_arity(),
                    found: b.metric + 1,
                });
            }
        }
        Ok(())
    }
}

fn link_ok(attr: &EdgeAttr, spec: &ConstraintSpec, residual: f64) -> bool {
    residual >= spec.demand
        && spec
            .link_bounds
            .iter()
            .all(|b| b.holds(attr.link_metrics[b.metric]))
}

/// Capacity and link-bound check for one edge at the given residual capacity.
pub fn edge_feasible(attr: &EdgeAttr, spec: &ConstraintSpec, residual: f64) -> Result<bool> {
    for b in &spec.link_bounds {
        if b.metric >= attr.link_metrics.len() {
            return Err(Error::ArityMismatch {
                expected: attr.link_metrics.len(),
                found: b.metric + 1,
            });
        }
    }
    Ok(link_ok(attr, spec, residual))
}

/// Accumulates cost and path metrics along a vertex sequence. Between two
/// vertices joined by parallel edges the cheapest one is used (ties broken by
/// path metrics, then edge id). Feasibility is not checked.
pub fn path_distance(g: &Graph, vertices: &[VertexId], spec: &ConstraintSpec) -> Result<PathLabel> {
    spec.check_arity(g)?;
    let Some(&first) = vertices.first() else {
        return Err(Error::config("a path needs at least one vertex"));
    };
    g.check_vertex(first)?;
    let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
    for w in vertices.windows(2) {
        g.check_vertex(w[1])?;
        let best = g
            .out_arcs(w[0])
            .iter()
            .filter(|a| a.vertex == w[1])
            .map(|a| a.edge)
            .min_by(|&x, &y| {
                let (ax, ay) = (&g.edge(x).attr, &g.edge(y).attr);
                ax.cost
                    .total_cmp(&ay.cost)
                    .then_with(|| cmp_slices(&ax.path_metrics, &ay.path_metrics))
                    .then(x.cmp(&y))
            });
        match best {
            Some(e) => edges.push(e),
            None => {
                return Err(Error::InvalidPath {
                    from: w[0].index(),
                    to: w[1].index(),
                })
            }
        }
    }
    PathLabel::from_edges(g, first, &edges)
}

/// Whether a label's accumulated path metrics respect every path bound.
pub fn path_feasible(label: &PathLabel, spec: &ConstraintSpec) -> Result<bool> {
    if !spec.path_bounds.is_empty() && spec.path_bounds.len() != label.path_dist.len() {
        return Err(Error::ArityMismatch {
            expected: label.path_dist.len(),
            found: spec.path_bounds.len(),
        });
    }
    Ok(label
        .path_dist
        .iter()
        .enumerate()
        .all(|(i, &d)| d <= spec.path_bound(i)))
}

pub(crate) fn cmp_slices(a: &[f64], b: &[f64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.total_cmp(y);
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}
