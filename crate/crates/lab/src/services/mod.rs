//! Experiment engines and the pathfinder switch they share.

mod bench;
mod energy;
mod te;
mod vne;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use anyhow::{bail, Result};
use nmroute_core::baselines::{ebfs, edijkstra, ibf, Metric};
use nmroute_core::csp::solve_csp;
use nmroute_core::fast::{solve_l, solve_l1};
use nmroute_core::{ConstraintSpec, Graph, Objective, RouteResult, SearchOptions, VertexId};

pub use bench::{bench_scalability, request_seed, BenchConfig, BenchRecord};
pub use energy::{energy, Energy, EnergyParams};
pub use te::{te_greedy, FlowState, TeOutcome};
pub use vne::{vne_embed, vne_pool, Embedding, Stage, VnRequest};

/// Path algorithms selectable from experiments and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Neighborhoods method in the cheapest regime that fits the request:
    /// link-only, one path bound with fewest hops, or the general search.
    Nm,
    /// General neighborhoods search with look-back.
    NmLb,
    Ebfs,
    EbfsLa,
    Ibf,
    DijkstraHop,
    DijkstraCost,
    /// Dijkstra on the metric of the single path bound.
    DijkstraMetric,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Nm,
        Algorithm::NmLb,
        Algorithm::Ebfs,
        Algorithm::EbfsLa,
        Algorithm::Ibf,
        Algorithm::DijkstraHop,
        Algorithm::DijkstraCost,
        Algorithm::DijkstraMetric,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Nm => "nm",
            Algorithm::NmLb => "nm-lb",
            Algorithm::Ebfs => "ebfs",
            Algorithm::EbfsLa => "ebfs-la",
            Algorithm::Ibf => "ibf",
            Algorithm::DijkstraHop => "dijkstra-hop",
            Algorithm::DijkstraCost => "dijkstra-cost",
            Algorithm::DijkstraMetric => "dijkstra-metric",
        }
    }
}

impl FromStr for Algorithm {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match Algorithm::ALL.into_iter().find(|a| a.id() == s) {
            Some(a) => Ok(a),
            None => {
                let ids: Vec<&str> = Algorithm::ALL.iter().map(|a| a.id()).collect();
                bail!("unknown algorithm `{s}` (expected one of {})", ids.join(", "))
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Knobs passed through to the exact searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteConfig {
    pub objective: Objective,
    pub dominance: bool,
    pub k: usize,
    pub time_limit: Option<Duration>,
}

impl Default for RouteConfig {
    fn default() -> Self {
        RouteConfig {
            objective: Objective::Cost,
            dominance: true,
            k: 1,
            time_limit: None,
        }
    }
}

impl RouteConfig {
    pub fn hops() -> Self {
        RouteConfig {
            objective: Objective::Hops,
            ..RouteConfig::default()
        }
    }

    fn options(&self) -> SearchOptions {
        let mut o = SearchOptions::default()
            .with_objective(self.objective)
            .with_dominance(self.dominance)
            .with_k(self.k);
        if let Some(t) = self.time_limit {
            o = o.with_time_limit(t);
        }
        o
    }
}

/// Runs one query with the chosen algorithm.
pub fn route(
    algo: Algorithm,
    g: &Graph,
    src: VertexId,
    dst: VertexId,
    spec: &ConstraintSpec,
    cfg: &RouteConfig,
) -> Result<RouteResult> {
    let opts = cfg.options();
    let single = spec.single_path_bound();
    let r = match algo {
        Algorithm::Nm if cfg.k == 1 && !spec.has_path_bounds() => solve_l(g, src, dst, spec, cfg.objective)?,
        Algorithm::Nm if cfg.k == 1 && cfg.objective == Objective::Hops && single.is_ok() => solve_l1(g, src, dst, spec)?,
        Algorithm::Nm => solve_csp(g, src, dst, spec, &opts)?,
        Algorithm::NmLb => solve_csp(g, src, dst, spec, &opts.with_look_back(true))?,
        Algorithm::Ebfs => ebfs(g, src, dst, spec, &opts)?,
        Algorithm::EbfsLa => ebfs(g, src, dst, spec, &opts.with_look_ahead(true))?,
        Algorithm::Ibf => ibf(g, src, dst, spec)?,
        Algorithm::DijkstraHop => edijkstra(g, src, dst, spec, Metric::Hops)?,
        Algorithm::DijkstraCost => edijkstra(g, src, dst, spec, Metric::Cost)?,
        Algorithm::DijkstraMetric => edijkstra(g, src, dst, spec, Metric::PathMetric)?,
    };
    Ok(r)
}
