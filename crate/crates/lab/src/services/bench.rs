use std::time::Duration;

use anyhow::Result;
use nmroute_core::{Outcome, RouteResult};

use super::{route, Algorithm, RouteConfig};
use crate::topology::{generate, make_requests, GenSpec, Model, PairCount, Severity, SloPreset};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub model: Model,
    pub avg_degree: f64,
    pub sizes: Vec<usize>,
    pub presets: Vec<Severity>,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    /// Share of vertices used as query count.
    pub fraction: f64,
    pub time_limit: Option<Duration>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            model: Model::Waxman,
            avg_degree: 4.0,
            sizes: vec![10, 100],
            presets: vec![Severity::Low, Severity::Medium],
            algorithms: vec![Algorithm::Nm, Algorithm::NmLb, Algorithm::Ebfs, Algorithm::EbfsLa],
            seeds: vec![1],
            fraction: 0.1,
            time_limit: Some(Duration::from_secs(60)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub seed: u64,
    pub n: usize,
    pub preset: Severity,
    pub query: usize,
    pub algorithm: Algorithm,
    pub outcome: Outcome,
    /// Hop count of the returned path.
    pub hops: Option<usize>,
    pub cost: Option<f64>,
    pub traversed_paths: u64,
    pub elapsed: Duration,
}

/// Runs every algorithm on the same queries. Queries of one cell are
/// answered in order on a shared substrate; after each query the path of
/// the first algorithm that found one is reserved, so later queries see
/// less capacity. Requests minimize hop count under the delay and cost
/// bounds of the preset.
pub fn bench_scalability(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let route_cfg = RouteConfig {
        time_limit: cfg.time_limit,
        ..RouteConfig::hops()
    };
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        for &severity in &cfg.presets {
            let preset = SloPreset::scalability(severity)?;
            for &seed in &cfg.seeds {
                let mut g = generate(&GenSpec::scalability(cfg.model, n, cfg.avg_degree, seed))?;
                let requests = make_requests(&g, PairCount::Fraction(cfg.fraction), &preset, request_seed(seed))?;
                for (query, req) in requests.iter().enumerate() {
                    let mut chosen = None;
                    for &algorithm in &cfg.algorithms {
                        let r: RouteResult = route(algorithm, &g, req.src, req.dst, &req.spec, &route_cfg)?;
                        let path = r.path();
                        records.push(BenchRecord {
                            seed,
                            n,
                            preset: severity,
                            query,
                            algorithm,
                            outcome: r.outcome,
                            hops: path.map(|p| p.hop_count()),
                            cost: path.map(|p| p.cost),
                            traversed_paths: r.counters.traversed_paths,
                            elapsed: r.elapsed,
                        });
                        if chosen.is_none() && r.outcome == Outcome::Found {
                            chosen = r.paths.into_iter().next();
                        }
                    }
                    if let Some(p) = chosen {
                        g.reserve(&p.edges, req.spec.demand())?;
                    }
                }
            }
        }
    }
    Ok(records)
}

/// Seed for the request draw of a cell, kept apart from the topology stream.
pub fn request_seed(seed: u64) -> u64 {
    seed ^ 0x5151_5151_0000_0000
}
