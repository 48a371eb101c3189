use std::cmp::Reverse;
use std::collections::BinaryHeap;

use anyhow::{ensure, Result};
use nmroute_core::{ConstraintSpec, Graph, PathLabel};

use super::{route, Algorithm, RouteConfig};
use crate::topology::Request;

/// One commodity after progressive filling.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub request: Request,
    /// Total throughput granted.
    pub allocated: f64,
    pub grants: u64,
    /// Sum of path hop counts over all grants.
    pub hop_sum: u64,
    pub current_path: Option<PathLabel>,
}

impl FlowState {
    /// Hops per granted quantum, or `None` for a flow that never grew.
    pub fn mean_hops(&self) -> Option<f64> {
        (self.grants > 0).then(|| self.hop_sum as f64 / self.grants as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeOutcome {
    pub flows: Vec<FlowState>,
    pub total: f64,
    /// `1 - residual / capacity` per edge.
    pub utilizations: Vec<f64>,
}

impl TeOutcome {
    /// Mean over flows that received anything of their hops per quantum.
    pub fn mean_hops(&self) -> f64 {
        let hops: Vec<f64> = self.flows.iter().filter_map(FlowState::mean_hops).collect();
        if hops.is_empty() {
            0.0
        } else {
            hops.iter().sum::<f64>() / hops.len() as f64
        }
    }
}

/// Max-min progressive filling: the flow with the least throughput (lowest
/// index on ties) gets one `quantum` along its current path, which is
/// recomputed with `algo` once it can no longer carry a full quantum. Flows
/// with no feasible path stop growing. Each request's demand is replaced by
/// the quantum.
pub fn te_greedy(g: &mut Graph, requests: &[Request], algo: Algorithm, quantum: f64, cfg: &RouteConfig) -> Result<TeOutcome> {
    ensure!(quantum.is_finite() && quantum > 0.0, "quantum must be positive");
    let mut flows: Vec<FlowState> = requests
        .iter()
        .map(|r| {
            ensure!(r.src != r.dst, "flow {} -> {} has no edges to fill", r.src.0, r.dst.0);
            let spec = r
                .spec
                .link_bounds()
                .iter()
                .fold(ConstraintSpec::new(quantum)?, |s, b| s.with_link_bound(b.metric, b.kind, b.bound))
                .with_path_bounds(r.spec.path_bounds().to_vec())?;
            Ok(FlowState {
                request: Request { spec, ..r.clone() },
                allocated: 0.0,
                grants: 0,
                hop_sum: 0,
                current_path: None,
            })
        })
        .collect::<Result<_>>()?;

    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = (0..flows.len()).map(|i| Reverse((0, i))).collect();
    while let Some(Reverse((_, i))) = heap.pop() {
        let flow = &mut flows[i];
        let fits = flow
            .current_path
            .as_ref()
            .is_some_and(|p| p.edges.iter().all(|&e| g.residual(e) >= quantum));
        if !fits {
            let r = &flow.request;
            let found = route(algo, g, r.src, r.dst, &r.spec, cfg)?;
            flow.current_path = found.paths.into_iter().next();
        }
        let Some(path) = &flow.current_path else {
            continue;
        };
        g.reserve(&path.edges, quantum)?;
        flow.grants += 1;
        flow.hop_sum += path.hop_count() as u64;
        flow.allocated = flow.grants as f64 * quantum;
        heap.push(Reverse((flow.grants, i)));
    }

    let total = flows.iter().map(|f| f.allocated).sum();
    Ok(TeOutcome {
        flows,
        total,
        utilizations: g.utilizations(),
    })
}
