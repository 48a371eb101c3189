//! The neighborhoods method for any number of link and path constraints.
//!
//! A forward pass grows levels of vertices reachable from the source in
//! exactly `k` feasible hops. A backward pass then rebuilds `k`-hop simple
//! paths from the destination, only stepping into the preceding level.
//! [`solve_csp`] repeats both passes with one more level at a time and keeps
//! the cheapest feasible path.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{path_feasible, ConstraintSpec, EdgeId, Graph, VertexId};
use crate::label::PathLabel;
use crate::search::{
    min_weight, Admit, Arena, BestSet, Counters, Objective, Outcome, ParetoStore, Pruned, RouteResult, SearchOptions,
    NO_PARENT,
};
use crate::timer::Stopwatch;

/// Forward-pass levels. Level `k` holds the vertices reachable from the
/// source by a walk of exactly `k` feasible arcs that never returns to the
/// source and only touches the destination at its end; a vertex may sit in
/// many levels but appears once per level.
#[derive(Debug, Clone)]
pub struct Neighborhoods {
    src: VertexId,
    dst: VertexId,
    members: Vec<Vec<VertexId>>,
    in_level: Vec<Vec<bool>>,
    best: Vec<Vec<f64>>,
    width: usize,
    mask: Vec<bool>,
    bounds: Vec<f64>,
    objective: Objective,
    look_back: bool,
    dominance: bool,
    k: usize,
    built: u64,
}

impl Neighborhoods {
    fn start(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec, opts: &SearchOptions, mask: Vec<bool>) -> Self {
        let n = g.vertex_count();
        let p = g.path_arity();
        let width = p + 1;
        let mut in_level = vec![false; n];
        in_level[src.index()] = true;
        let best = if opts.look_back {
            let mut b = vec![f64::INFINITY; n * width];
            b[src.index() * width..(src.index() + 1) * width].fill(0.0);
            b
        } else {
            Vec::new()
        };
        Neighborhoods {
            src,
            dst,
            members: vec![vec![src]],
            in_level: vec![in_level],
            best: vec![best],
            width,
            mask,
            bounds: (0..p).map(|i| spec.path_bound(i)).collect(),
            objective: opts.objective,
            look_back: opts.look_back,
            dominance: opts.dominance,
            k: opts.k,
            built: 0,
        }
    }

    pub fn source(&self) -> VertexId {
        self.src
    }

    pub fn destination(&self) -> VertexId {
        self.dst
    }

    /// Number of levels past level 0, i.e. the hop count of the paths the
    /// next backward pass produces.
    pub fn hops(&self) -> usize {
        self.members.len() - 1
    }

    pub fn level(&self, k: usize) -> &[VertexId] {
        &self.members[k]
    }

    pub fn contains(&self, k: usize, v: VertexId) -> bool {
        self.in_level.get(k).is_some_and(|l| l[v.index()])
    }

    /// Per path metric, the least distance from the source over walks of
    /// exactly `k` hops ending at `v`. Only recorded with look-back on.
    pub fn best_from_source(&self, k: usize, v: VertexId) -> Option<&[f64]> {
        if !self.look_back || !self.contains(k, v) {
            return None;
        }
        let b = v.index() * self.width;
        Some(&self.best[k][b..b + self.width - 1])
    }

    #[inline]
    fn best_row(&self, k: usize, v: VertexId) -> &[f64] {
        let b = v.index() * self.width;
        &self.best[k][b..b + self.width]
    }

    /// Appends one level.
    pub fn extend(&mut self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if self.members.len() >= n {
            return Err(Error::MaxLengthExceeded);
        }
        let prev = self.members.len() - 1;
        let width = self.width;
        let p = width - 1;
        let mut hit = vec![false; n];
        let mut best = if self.look_back {
            vec![f64::INFINITY; n * width]
        } else {
            Vec::new()
        };
        for &u in &self.members[prev] {
            if u == self.dst {
                continue;
            }
            for a in g.out_arcs(u) {
                if !self.mask[a.edge.index()] || a.vertex == self.src {
                    continue;
                }
                let v = a.vertex.index();
                hit[v] = true;
                if self.look_back {
                    let from = &self.best[prev][u.index() * width..(u.index() + 1) * width];
                    let to = &mut best[v * width..(v + 1) * width];
                    let attr = &g.edge(a.edge).attr;
                    for i in 0..p {
                        to[i] = to[i].min(from[i] + attr.path_metrics[i]);
                    }
                    to[p] = to[p].min(from[p] + self.objective.weight(g, a.edge));
                }
            }
        }
        if self.look_back {
            for (v, h) in hit.iter_mut().enumerate() {
                if *h && (0..p).any(|i| best[v * width + i] > self.bounds[i]) {
                    *h = false;
                }
            }
        }
        let members = (0..n).filter(|&v| hit[v]).map(VertexId::new).collect();
        self.members.push(members);
        self.in_level.push(hit);
        self.best.push(best);
        self.built += 1;
        Ok(())
    }
}

fn check_query(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec, opts: &SearchOptions) -> Result<()> {
    opts.validate()?;
    spec.check_arity(g)?;
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    if g.has_negative_path_metric() {
        return Err(Error::config("negative path metrics are only supported by solve_l1"));
    }
    Ok(())
}

/// Forward pass up to the first level containing `dst`.
pub fn build_neighborhoods(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    opts: &SearchOptions,
) -> Result<Neighborhoods> {
    check_query(g, src, dst, spec, opts)?;
    let mask = g.feasible_edges(spec)?;
    let mut nh = Neighborhoods::start(g, src, dst, spec, opts, mask);
    while !nh.contains(nh.hops(), dst) {
        if nh.level(nh.hops()).is_empty() {
            return Err(Error::Unreachable);
        }
        nh.extend(g).map_err(|_| Error::Unreachable)?;
    }
    Ok(nh)
}

/// Adds one level to `nh`.
pub fn extend_neighborhoods(nh: &mut Neighborhoods, g: &Graph) -> Result<()> {
    nh.extend(g)
}

/// All simple `nh.hops()`-hop candidates from source to destination that
/// survive the enabled pruning, best first. Feasibility against the path
/// bounds is not checked.
pub fn backward_pass(nh: &Neighborhoods, g: &Graph) -> Result<Vec<PathLabel>> {
    let mut engine = Backward::new(g, nh, min_weight(g, &nh.mask, nh.objective));
    let best = BestSet::new(1, nh.objective);
    let watch = Stopwatch::start(None);
    let ids = engine.run(nh, &best, &watch).unwrap_or_default();
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        out.push(PathLabel::from_edges(g, nh.src, &engine.arena.edges_to_root(id))?);
    }
    out.sort_by(|a, b| a.rank_cmp(b));
    Ok(out)
}

/// Suffix tree shared by the backward passes of one query. A suffix built
/// in an earlier pass is reused when a later pass reaches it again, so each
/// distinct suffix is built (and counted) once.
struct Backward<'a> {
    g: &'a Graph,
    arena: Arena,
    root: Option<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    store: Option<ParetoStore>,
    counters: Counters,
    min_weight: f64,
    objective: Objective,
}

impl<'a> Backward<'a> {
    fn new(g: &'a Graph, nh: &Neighborhoods, min_weight: f64) -> Self {
        let pareto = nh.dominance && nh.k == 1;
        Backward {
            g,
            arena: Arena::new(g.path_arity()),
            root: None,
            first_child: Vec::new(),
            next_sibling: Vec::new(),
            store: pareto.then(|| ParetoStore::new(g.vertex_count())),
            counters: Counters::default(),
            min_weight,
            objective: nh.objective,
        }
    }

    fn child(&self, parent: u32, e: EdgeId) -> Option<u32> {
        let mut c = self.first_child[parent as usize];
        while c != NO_PARENT {
            if self.arena.edge(c) == e {
                return Some(c);
            }
            c = self.next_sibling[c as usize];
        }
        None
    }

    fn create(&mut self, parent: u32, e: EdgeId, u: VertexId, level: usize) -> u32 {
        let w = self.objective.weight(self.g, e);
        let id = self.arena.extend(self.g, parent, e, u, w);
        self.first_child.push(NO_PARENT);
        self.next_sibling.push(self.first_child[parent as usize]);
        self.first_child[parent as usize] = id;
        self.counters.traversed_paths += 1;
        if level > 0 {
            if let Some(store) = self.store.as_mut() {
                if let Admit::Dominated = store.admit(&mut self.arena, u, id) {
                    self.counters.dominance_pruned += 1;
                    self.arena.kill(id);
                }
            }
        }
        id
    }

    /// Runs the backward pass for the current last level of `nh`. Returns
    /// the arena ids of the complete candidates, or `None` when the time
    /// limit ran out.
    fn run(&mut self, nh: &Neighborhoods, best: &BestSet, watch: &Stopwatch) -> Option<Vec<u32>> {
        let g = self.g;
        let src = nh.src;
        let root = match self.root {
            Some(r) => r,
            None => {
                let r = self.arena.root(nh.dst);
                self.first_child.push(NO_PARENT);
                self.next_sibling.push(NO_PARENT);
                self.root = Some(r);
                r
            }
        };
        let mut frontier = vec![root];
        for k in (1..=nh.hops()).rev() {
            let j = k - 1;
            let mut next = Vec::new();
            for &id in &frontier {
                if self.arena.is_dead(id) {
                    continue;
                }
                let v = self.arena.vertex(id);
                for a in g.in_arcs(v) {
                    let u = a.vertex;
                    if !nh.mask[a.edge.index()] || !nh.contains(j, u) {
                        continue;
                    }
                    if (j > 0 && u == src) || self.arena.contains(id, u) {
                        continue;
                    }
                    let child = match self.child(id, a.edge) {
                        Some(c) => c,
                        None => {
                            if self.counters.traversed_paths % 4096 == 4095 && watch.expired() {
                                return None;
                            }
                            self.create(id, a.edge, u, j)
                        }
                    };
                    if !self.arena.is_dead(child) && self.admit(nh, child, j, u, best) {
                        next.push(child);
                    }
                }
            }
            frontier = next;
        }
        frontier.retain(|&id| !self.arena.is_dead(id));
        Some(frontier)
    }

    fn admit(&mut self, nh: &Neighborhoods, id: u32, level: usize, u: VertexId, best: &BestSet) -> bool {
        let d = self.arena.dist(id);
        let p = nh.bounds.len();
        let lower = if nh.look_back {
            let b = nh.best_row(level, u);
            if (0..p).any(|i| d[i] + b[i] > nh.bounds[i]) {
                self.counters.infeasibility_pruned += 1;
                return false;
            }
            b[p]
        } else {
            level as f64 * self.min_weight
        };
        if d[p] + lower > best.bound() {
            self.counters.infeasibility_pruned += 1;
            return false;
        }
        if self.store.is_some() && best.any_dominates(d) {
            self.counters.dominance_pruned += 1;
            return false;
        }
        true
    }
}

/// Cheapest simple path meeting every link and path constraint, or the `k`
/// cheapest with `opts.k > 1`. Ties go to fewer hops, then to the smaller
/// vertex sequence.
pub fn solve_csp(
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    opts: &SearchOptions,
) -> Result<RouteResult> {
    check_query(g, src, dst, spec, opts)?;
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
    let min_weight = pruned.min_weight;
    let mut nh = Neighborhoods::start(g, src, dst, spec, opts, pruned.mask);
    let mut engine = Backward::new(g, &nh, min_weight);
    let mut best = BestSet::new(opts.k, opts.objective);
    let mut hop_trace = Vec::new();
    let mut timed_out = false;

    for h in 1..=opts.hop_cap(g) {
        if h as f64 * min_weight >= best.bound() {
            break;
        }
        nh.extend(g)?;
        if nh.level(h).is_empty() {
            break;
        }
        if !nh.contains(h, dst) {
            continue;
        }
        if nh.look_back && nh.best_row(h, dst)[nh.bounds.len()] >= best.bound() {
            continue;
        }
        let Some(ids) = engine.run(&nh, &best, &watch) else {
            timed_out = true;
            break;
        };
        hop_trace.push(h);
        for id in ids {
            let label = PathLabel::from_edges(g, src, &engine.arena.edges_to_root(id))?;
            if path_feasible(&label, spec)? {
                best.offer(label);
            }
        }
        if watch.expired() {
            timed_out = true;
            break;
        }
    }

    let outcome = if timed_out {
        Outcome::Timeout
    } else if best.is_empty() {
        Outcome::NoFeasiblePath
    } else {
        Outcome::Found
    };
    let mut counters = engine.counters;
    counters.neighborhoods_built = nh.built;
    Ok(RouteResult {
        outcome,
        paths: best.into_paths(),
        counters,
        elapsed: watch.elapsed(),
        hop_trace,
    })
}
