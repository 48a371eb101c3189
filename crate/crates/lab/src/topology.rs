//! Random substrates and request lists.

use std::collections::HashSet;
use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use nmroute_core::{ConstraintSpec, EdgeAttr, Graph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WAXMAN_ALPHA: f64 = 0.15;
pub const WAXMAN_BETA: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Waxman,
    BarabasiAlbert,
}

impl FromStr for Model {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "waxman" => Ok(Model::Waxman),
            "barabasi-albert" | "ba" => Ok(Model::BarabasiAlbert),
            _ => bail!("unknown model `{s}` (expected waxman or barabasi-albert)"),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Waxman => "waxman",
            Model::BarabasiAlbert => "barabasi-albert",
        })
    }
}

/// Parameters of one generated substrate.
///
/// Every edge gets a capacity drawn from `bw_range`, a cost drawn from
/// `cost_range`, and path metrics `[delay, cost]` where the delay is the
/// Euclidean length of the edge times `rate`. There are no link metrics
/// besides capacity. With `cpu_range` set, vertices get capacities too.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    pub avg_degree: f64,
    pub seed: u64,
    pub rate: f64,
    pub bw_range: (f64, f64),
    pub cost_range: (f64, f64),
    pub cpu_range: Option<(f64, f64)>,
}

impl GenSpec {
    pub fn new(model: Model, n: usize, avg_degree: f64, seed: u64) -> Self {
        GenSpec {
            model,
            n,
            avg_degree,
            seed,
            rate: 1.0,
            bw_range: (1.0, 10.0),
            cost_range: (1.0, 10.0),
            cpu_range: None,
        }
    }

    /// Bandwidth 1 to 9 and cost 1 to 10, used by the scalability benchmark.
    pub fn scalability(model: Model, n: usize, avg_degree: f64, seed: u64) -> Self {
        GenSpec {
            bw_range: (1.0, 9.0),
            ..GenSpec::new(model, n, avg_degree, seed)
        }
    }

    /// Bandwidth 1 to 10, used by the traffic engineering runs.
    pub fn traffic(model: Model, n: usize, avg_degree: f64, seed: u64) -> Self {
        GenSpec::new(model, n, avg_degree, seed)
    }

    /// CPU and bandwidth 0 to 100, used as embedding substrates.
    pub fn substrate(model: Model, n: usize, avg_degree: f64, seed: u64) -> Self {
        GenSpec {
            bw_range: (0.0, 100.0),
            cpu_range: Some((0.0, 100.0)),
            ..GenSpec::new(model, n, avg_degree, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.n >= 2, "a topology needs at least 2 vertices");
        ensure!(
            self.avg_degree.is_finite() && self.avg_degree >= 1.0,
            "average degree must be at least 1"
        );
        ensure!(
            self.avg_degree < self.n as f64,
            "average degree {} is unreachable with {} vertices",
            self.avg_degree,
            self.n
        );
        ensure!(self.rate.is_finite() && self.rate > 0.0, "propagation rate must be positive");
        for (name, r) in [("bandwidth", Some(self.bw_range)), ("cost", Some(self.cost_range)), ("cpu", self.cpu_range)] {
            if let Some((lo, hi)) = r {
                ensure!(lo.is_finite() && hi.is_finite() && lo <= hi, "{name} range must satisfy lo <= hi");
                ensure!(lo >= 0.0, "{name} range must be non-negative");
            }
        }
        Ok(())
    }

    fn edge_target(&self) -> usize {
        ((self.n as f64 * self.avg_degree / 2.0).round() as usize).clamp(self.n - 1, self.n * (self.n - 1) / 2)
    }
}

/// Builds a connected undirected substrate. Deterministic in `spec`.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let pos: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let target = spec.edge_target();
    let mut pairs = match spec.model {
        Model::Waxman => waxman(&pos, target, &mut rng),
        Model::BarabasiAlbert => barabasi_albert(n, spec.avg_degree, &mut rng),
    };
    connect(&pos, &mut pairs);
    if spec.model == Model::Waxman {
        trim(n, &mut pairs, target, &mut rng);
    }

    let mut g = Graph::new(false, n, 0, 2);
    for &(u, v) in &pairs {
        let bw = uniform(&mut rng, spec.bw_range);
        let cost = uniform(&mut rng, spec.cost_range);
        let delay = distance(pos[u], pos[v]) * spec.rate;
        g.add_edge(u, v, EdgeAttr::new(bw, vec![], vec![delay, cost], cost))?;
    }
    if let Some(range) = spec.cpu_range {
        let caps = (0..n).map(|_| uniform(&mut rng, range)).collect();
        g.set_vertex_capacities(caps)?;
    }
    g.set_plane(pos, spec.rate)?;
    Ok(g)
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

fn distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Draws random vertex pairs and keeps each with the Waxman probability
/// until `target` distinct edges exist.
fn waxman(pos: &[(f64, f64)], target: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let n = pos.len();
    let scale = WAXMAN_BETA * SQRT_2;
    let mut seen = HashSet::new();
    let mut pairs = Vec::with_capacity(target);
    while pairs.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || seen.contains(&key(u, v)) {
            continue;
        }
        let p = WAXMAN_ALPHA * (-distance(pos[u], pos[v]) / scale).exp();
        if rng.gen::<f64>() < p {
            seen.insert(key(u, v));
            pairs.push(key(u, v));
        }
    }
    pairs
}

/// Preferential attachment with `m = round(avg_degree / 2)` links per new
/// vertex, seeded by a clique on the first `m + 1` vertices.
fn barabasi_albert(n: usize, avg_degree: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let m = ((avg_degree / 2.0).round() as usize).clamp(1, n - 1);
    let core = (m + 1).min(n);
    let mut pairs = Vec::new();
    let mut ends = Vec::new();
    for u in 0..core {
        for v in u + 1..core {
            pairs.push((u, v));
            ends.extend([u, v]);
        }
    }
    for v in core..n {
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        while chosen.len() < m {
            let u = ends[rng.gen_range(0..ends.len())];
            if !chosen.contains(&u) {
                chosen.push(u);
            }
        }
        for u in chosen {
            pairs.push(key(u, v));
            ends.extend([u, v]);
        }
    }
    pairs
}

fn components(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Joins every component to the one holding vertex 0 through the closest
/// pair of vertices.
fn connect(pos: &[(f64, f64)], pairs: &mut Vec<(usize, usize)>) {
    let n = pos.len();
    loop {
        let comp = components(n, pairs);
        let Some(other) = comp.iter().copied().find(|&c| c != comp[0]) else {
            return;
        };
        let mut best = (f64::INFINITY, 0, 0);
        for u in (0..n).filter(|&u| comp[u] == comp[0]) {
            for v in (0..n).filter(|&v| comp[v] == other) {
                let d = distance(pos[u], pos[v]);
                if d < best.0 {
                    best = (d, u, v);
                }
            }
        }
        pairs.push(key(best.1, best.2));
    }
}

/// Drops random non-bridge edges until at most `target` remain.
fn trim(n: usize, pairs: &mut Vec<(usize, usize)>, target: usize, rng: &mut ChaCha8Rng) {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.shuffle(rng);
    let mut removed = vec![false; pairs.len()];
    let mut excess = pairs.len().saturating_sub(target);
    for i in order {
        if excess == 0 {
            break;
        }
        removed[i] = true;
        let kept: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(j, _)| !removed[*j]).map(|(_, &p)| p).collect();
        if components(n, &kept).iter().all(|&c| c == 0) {
            excess -= 1;
        } else {
            removed[i] = false;
        }
    }
    let mut i = 0;
    pairs.retain(|_| {
        i += 1;
        !removed[i - 1]
    });
}

/// Diagonal of the unit plane times the propagation rate.
pub fn stretch(g: &Graph) -> Result<f64> {
    let rate = g
        .propagation_rate()
        .context("graph has no plane coordinates")?;
    Ok(SQRT_2 * rate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Low,
    Medium,
    High,
}

impl FromStr for Severity {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Severity::Low),
            "medium" | "mid" => Ok(Severity::Medium),
            "high" => Ok(Severity::High),
            _ => bail!("unknown severity `{s}` (expected low, medium or high)"),
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Low => "low",
            Severity::Medium => "medium",
            Severity::High => "high",
        })
    }
}

/// Request bounds: a bandwidth demand, a delay bound as a multiple of the
/// stretch, and a cost bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SloPreset {
    pub severity: Severity,
    pub bw_bound: f64,
    pub delay_factor: f64,
    pub cost_bound: f64,
}

impl SloPreset {
    /// Scalability presets; only `low` and `medium` exist.
    pub fn scalability(severity: Severity) -> Result<Self> {
        let (bw_bound, delay_factor, cost_bound) = match severity {
            Severity::Low => (1.0, 4.0, 100.0),
            Severity::Medium => (4.0, 2.5, 50.0),
            Severity::High => bail!("the scalability presets are low and medium"),
        };
        Ok(SloPreset {
            severity,
            bw_bound,
            delay_factor,
            cost_bound,
        })
    }

    /// Delay-only presets for traffic engineering, with demand `quantum`.
    pub fn traffic(severity: Severity, quantum: f64) -> Self {
        let delay_factor = match severity {
            Severity::Low => 4.0,
            Severity::Medium => 1.5,
            Severity::High => 1.0,
        };
        SloPreset {
            severity,
            bw_bound: quantum,
            delay_factor,
            cost_bound: f64::INFINITY,
        }
    }

    pub fn spec(&self, stretch: f64) -> Result<ConstraintSpec> {
        ensure!(self.delay_factor > 0.0, "delay factor must be positive");
        Ok(ConstraintSpec::new(self.bw_bound)?.with_path_bounds(vec![self.delay_factor * stretch, self.cost_bound])?)
    }
}

/// How many source and destination pairs to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairCount {
    Fraction(f64),
    Exact(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub src: VertexId,
    pub dst: VertexId,
    pub spec: ConstraintSpec,
}

/// Distinct ordered pairs `src != dst`, each carrying the preset bounds.
pub fn make_requests(g: &Graph, count: PairCount, preset: &SloPreset, seed: u64) -> Result<Vec<Request>> {
    let n = g.vertex_count();
    let total = n * n.saturating_sub(1);
    let want = match count {
        PairCount::Fraction(f) => {
            ensure!(f > 0.0 && f <= 1.0, "fraction must be in (0, 1]");
            ((f * n as f64).ceil() as usize).min(total)
        }
        PairCount::Exact(k) => k,
    };
    ensure!(want <= total, "{want} pairs requested but only {total} exist");
    let spec = preset.spec(stretch(g)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = if 2 * want > total {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        all.shuffle(&mut rng);
        all.truncate(want);
        all
    } else {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(want);
        while out.len() < want {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u, v)) {
                out.push((u, v));
            }
        }
        out
    };
    Ok(pairs
        .into_iter()
        .map(|(u, v)| Request {
            src: VertexId::new(u),
            dst: VertexId::new(v),
            spec: spec.clone(),
        })
        .collect())
}
