//! Query options, results and the bookkeeping shared by the exhaustive
//! searches (partial-path arena, per-vertex Pareto stores, k-best sets).

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::time::Duration;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::label::{dominates_vec, PathLabel};

/// What an exact search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    /// Total edge cost.
    #[default]
    Cost,
    /// Hop count, i.e. every edge costs one unit (resource-optimal path).
    Hops,
}

impl Objective {
    #[inline]
    pub(crate) fn weight(self, g: &Graph, e: EdgeId) -> f64 {
        match self {
            Objective::Cost => g.edge(e).attr.cost,
            Objective::Hops => 1.0,
        }
    }

    pub(crate) fn value(self, label: &PathLabel) -> f64 {
        match self {
            Objective::Cost => label.cost,
            Objective::Hops => label.hop_count() as f64,
        }
    }
}

/// Knobs for the exhaustive searches. `look_back` applies to the
/// neighborhoods method, `look_ahead` to exhaustive BFS.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub dominance: bool,
    pub look_back: bool,
    pub look_ahead: bool,
    pub k: usize,
    pub max_hops: Option<usize>,
    pub objective: Objective,
    /// Only honored with the `std` feature.
    pub time_limit: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            dominance: true,
            look_back: false,
            look_ahead: false,
            k: 1,
            max_hops: None,
            objective: Objective::Cost,
            time_limit: None,
        }
    }
}

impl SearchOptions {
    pub fn plain() -> Self {
        SearchOptions {
            dominance: false,
            ..Default::default()
        }
    }

    pub fn with_dominance(mut self, on: bool) -> Self {
        self.dominance = on;
        self
    }

    pub fn with_look_back(mut self, on: bool) -> Self {
        self.look_back = on;
        self
    }

    pub fn with_look_ahead(mut self, on: bool) -> Self {
        self.look_ahead = on;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_max_hops(mut self, hops: usize) -> Self {
        self.max_hops = Some(hops);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("k must be at least 1"));
        }
        Ok(())
    }

    pub(crate) fn hop_cap(&self, g: &Graph) -> usize {
        let cap = g.vertex_count().saturating_sub(1);
        self.max_hops.map_or(cap, |h| h.min(cap))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// Partial paths created while searching (one per arc extension).
    pub traversed_paths: u64,
    pub dominance_pruned: u64,
    pub infeasibility_pruned: u64,
    pub neighborhoods_built: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Found,
    NoFeasiblePath,
    Unreachable,
    NegativeCycle,
    Timeout,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Found => "found",
            Outcome::NoFeasiblePath => "no-feasible",
            Outcome::Unreachable => "unreachable",
            Outcome::NegativeCycle => "negative-cycle",
            Outcome::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteResult {
    pub outcome: Outcome,
    /// Best paths first; at most `k` of them.
    pub paths: Vec<PathLabel>,
    pub counters: Counters,
    pub elapsed: Duration,
    /// Hop counts of the candidate batches validated, in order.
    pub hop_trace: Vec<usize>,
}

impl RouteResult {
    pub(crate) fn empty(outcome: Outcome) -> Self {
        RouteResult {
            outcome,
            paths: Vec::new(),
            counters: Counters::default(),
            elapsed: Duration::ZERO,
            hop_trace: Vec::new(),
        }
    }

    pub(crate) fn found(path: PathLabel) -> Self {
        let mut r = RouteResult::empty(Outcome::Found);
        r.paths.push(path);
        r
    }

    pub fn path(&self) -> Option<&PathLabel> {
        self.paths.first()
    }

    pub fn is_found(&self) -> bool {
        self.outcome == Outcome::Found
    }

    /// The best path, or the outcome as an error.
    pub fn into_path(self) -> Result<PathLabel> {
        match self.outcome {
            Outcome::Found => Ok(self.paths.into_iter().next().expect("found implies a path")),
            Outcome::NoFeasiblePath => Err(Error::NoFeasiblePath),
            Outcome::Unreachable => Err(Error::Unreachable),
            Outcome::NegativeCycle => Err(Error::NegativeCycle),
            Outcome::Timeout => Err(Error::Timeout),
        }
    }
}

/// Feasible arcs for one query plus the cheapest objective weight among them.
pub(crate) struct Pruned {
    pub mask: Vec<bool>,
    pub min_weight: f64,
}

impl Pruned {
    pub fn new(g: &Graph, spec: &crate::graph::ConstraintSpec, objective: Objective) -> Result<Self> {
        let mask = g.feasible_edges(spec)?;
        let min_weight = min_weight(g, &mask, objective);
        Ok(Pruned { mask, min_weight })
    }

    #[inline]
    pub fn ok(&self, e: EdgeId) -> bool {
        self.mask[e.index()]
    }
}

/// Least objective weight over the arcs allowed by `mask`.
pub(crate) fn min_weight(g: &Graph, mask: &[bool], objective: Objective) -> f64 {
    mask.iter()
        .enumerate()
        .filter(|(_, &ok)| ok)
        .map(|(e, _)| objective.weight(g, EdgeId(e as u32)))
        .fold(f64::INFINITY, f64::min)
}

pub(crate) const NO_PARENT: u32 = u32::MAX;

/// Tree of partial paths. Each node stores the vector
/// `(path metrics…, objective, hops)` used for dominance checks.
pub(crate) struct Arena {
    pub width: usize,
    vertex: Vec<VertexId>,
    edge: Vec<EdgeId>,
    parent: Vec<u32>,
    depth: Vec<u32>,
    dead: Vec<bool>,
    dist: Vec<f64>,
}

impl Arena {
    pub fn new(path_arity: usize) -> Self {
        Arena {
            width: path_arity + 2,
            vertex: Vec::new(),
            edge: Vec::new(),
            parent: Vec::new(),
            depth: Vec::new(),
            dead: Vec::new(),
            dist: Vec::new(),
        }
    }

    pub fn root(&mut self, v: VertexId) -> u32 {
        let id = self.vertex.len() as u32;
        self.vertex.push(v);
        self.edge.push(EdgeId(u32::MAX));
        self.parent.push(NO_PARENT);
        self.depth.push(0);
        self.dead.push(false);
        self.dist.extend(core::iter::repeat_n(0.0, self.width));
        id
    }

    /// Extends `parent` through edge `e` to `v`, adding the edge's path metrics
    /// and objective weight.
    pub fn extend(&mut self, g: &Graph, parent: u32, e: EdgeId, v: VertexId, obj_weight: f64) -> u32 {
        let id = self.vertex.len() as u32;
        let p = parent as usize;
        let base = p * self.width;
        let metrics = &g.edge(e).attr.path_metrics;
        let np = metrics.len();
        for (i, w) in metrics.iter().enumerate() {
            let x = self.dist[base + i] + w;
            self.dist.push(x);
        }
        let x = self.dist[base + np] + obj_weight;
        self.dist.push(x);
        let hops = self.dist[base + np + 1] + 1.0;
        self.dist.push(hops);
        self.vertex.push(v);
        self.edge.push(e);
        self.parent.push(parent);
        self.depth.push(self.depth[p] + 1);
        self.dead.push(false);
        id
    }

    #[inline]
    pub fn dist(&self, id: u32) -> &[f64] {
        let b = id as usize * self.width;
        &self.dist[b..b + self.width]
    }

    /// Drops the most recently added node.
    pub fn pop(&mut self) {
        self.vertex.pop();
        self.edge.pop();
        self.parent.pop();
        self.depth.pop();
        self.dead.pop();
        self.dist.truncate(self.vertex.len() * self.width);
    }

    #[inline]
    pub fn vertex(&self, id: u32) -> VertexId {
        self.vertex[id as usize]
    }

    #[inline]
    pub fn edge(&self, id: u32) -> EdgeId {
        self.edge[id as usize]
    }

    #[inline]
    pub fn depth(&self, id: u32) -> usize {
        self.depth[id as usize] as usize
    }

    #[inline]
    pub fn is_dead(&self, id: u32) -> bool {
        self.dead[id as usize]
    }

    #[inline]
    pub fn kill(&mut self, id: u32) {
        self.dead[id as usize] = true;
    }

    /// Whether `v` already lies on the partial path ending at `id`.
    pub fn contains(&self, mut id: u32, v: VertexId) -> bool {
        loop {
            if self.vertex[id as usize] == v {
                return true;
            }
            id = self.parent[id as usize];
            if id == NO_PARENT {
                return false;
            }
        }
    }

    /// Edges from the root down to `id`.
    pub fn edges_from_root(&self, mut id: u32) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(self.depth(id));
        while self.parent[id as usize] != NO_PARENT {
            out.push(self.edge[id as usize]);
            id = self.parent[id as usize];
        }
        out.reverse();
        out
    }

    /// Edges from `id` up to the root (the order of a suffix tree read from its leaf).
    pub fn edges_to_root(&self, mut id: u32) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(self.depth(id));
        while self.parent[id as usize] != NO_PARENT {
            out.push(self.edge[id as usize]);
            id = self.parent[id as usize];
        }
        out
    }
}

/// Non-dominated partial paths per vertex. Entries dominated by a newcomer
/// are killed in the arena so queued extensions of them are skipped.
pub(crate) struct ParetoStore {
    per_vertex: Vec<Vec<u32>>,
}

pub(crate) enum Admit {
    Dominated,
    /// An entry with an identical vector already exists.
    Duplicate,
    Inserted,
}

impl ParetoStore {
    pub fn new(n: usize) -> Self {
        ParetoStore {
            per_vertex: vec![Vec::new(); n],
        }
    }

    pub fn admit(&mut self, arena: &mut Arena, v: VertexId, id: u32) -> Admit {
        let list = &mut self.per_vertex[v.index()];
        let d = arena.dist(id);
        let mut duplicate = false;
        for &other in list.iter() {
            let o = arena.dist(other);
            if dominates_vec(o, d) {
                return Admit::Dominated;
            }
            if !duplicate && o == d {
                duplicate = true;
            }
        }
        if duplicate {
            return Admit::Duplicate;
        }
        let mut killed = Vec::new();
        list.retain(|&other| {
            if dominates_vec(arena.dist(id), arena.dist(other)) {
                killed.push(other);
                false
            } else {
                true
            }
        });
        for k in killed {
            arena.kill(k);
        }
        list.push(id);
        Admit::Inserted
    }
}

/// The k best feasible complete paths seen so far.
pub(crate) struct BestSet {
    k: usize,
    objective: Objective,
    entries: Vec<(f64, PathLabel)>,
}

impl BestSet {
    pub fn new(k: usize, objective: Objective) -> Self {
        BestSet {
            k,
            objective,
            entries: Vec::new(),
        }
    }

    fn cmp(a: &(f64, PathLabel), b: &(f64, PathLabel)) -> Ordering {
        a.0.total_cmp(&b.0)
            .then(a.1.hop_count().cmp(&b.1.hop_count()))
            .then_with(|| a.1.vertices.cmp(&b.1.vertices))
            .then_with(|| a.1.edges.cmp(&b.1.edges))
    }

    pub fn offer(&mut self, label: PathLabel) {
        let entry = (self.objective.value(&label), label);
        if self.entries.iter().any(|e| e.1.edges == entry.1.edges && e.1.vertices == entry.1.vertices) {
            return;
        }
        let pos = self
            .entries
            .binary_search_by(|e| Self::cmp(e, &entry))
            .unwrap_or_else(|p| p);
        if pos < self.k {
            self.entries.insert(pos, entry);
            self.entries.truncate(self.k);
        }
    }

    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.k
    }

    /// Objective of the worst kept path once the set is full, else `+inf`.
    pub fn bound(&self) -> f64 {
        if self.is_full() {
            self.entries[self.k - 1].0
        } else {
            f64::INFINITY
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether any kept complete path dominates the arena vector `d` on
    /// path metrics and objective.
    pub fn any_dominates(&self, d: &[f64]) -> bool {
        let np = d.len() - 2;
        self.entries.iter().any(|(obj, l)| {
            let mut strict = false;
            for (x, y) in l.path_dist.iter().zip(&d[..np]) {
                if x > y {
                    return false;
                }
                strict |= x < y;
            }
            if *obj > d[np] {
                return false;
            }
            strict || *obj < d[np]
        })
    }

    pub fn into_paths(self) -> Vec<PathLabel> {
        self.entries.into_iter().map(|(_, l)| l).collect()
    }
}

#[derive(Clone, Copy, PartialEq)]
pub(crate) struct Key(pub f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Single-source Dijkstra over arcs allowed by `mask`. With `reverse` the
/// search runs on incoming arcs, giving distances *to* `source`.
/// Returns distances and the arc (predecessor vertex, edge) that set them.
pub(crate) fn dijkstra<W>(
    g: &Graph,
    source: VertexId,
    mask: &[bool],
    reverse: bool,
    weight: W,
) -> (Vec<f64>, Vec<Option<(VertexId, EdgeId)>>)
where
    W: Fn(EdgeId) -> f64,
{
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source.index()] = 0.0;
    heap.push(Reverse((Key(0.0), source)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u.index()] {
            continue;
        }
        done[u.index()] = true;
        let arcs = if reverse { g.in_arcs(u) } else { g.out_arcs(u) };
        for a in arcs {
            if !mask[a.edge.index()] {
                continue;
            }
            let nd = d + weight(a.edge);
            let v = a.vertex.index();
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some((u, a.edge));
                heap.push(Reverse((Key(nd), a.vertex)));
            }
        }
    }
    (dist, pred)
}
