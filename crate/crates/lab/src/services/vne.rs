use std::fmt;

use anyhow::{ensure, Context, Result};
use nmroute_core::{ConstraintSpec, EdgeId, Graph, Outcome, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{route, Algorithm, RouteConfig};
use crate::topology::stretch;

/// A virtual network: CPU demand per virtual vertex and
/// `(a, b, bandwidth, latency bound)` per virtual edge.
#[derive(Debug, Clone, PartialEq)]
pub struct VnRequest {
    pub cpu: Vec<f64>,
    pub links: Vec<(usize, usize, f64, f64)>,
}

/// Draws `count` requests of `size` vertices. Vertex `i` links to the next
/// `degree` vertices, so degree 1 is a chain and `size - 1` a clique. CPU
/// and bandwidth demands are uniform in 1 to 10; latency bounds are uniform
/// in 1 to 4 times the stretch of `g`.
pub fn vne_pool(g: &Graph, count: usize, size: usize, degree: usize, seed: u64) -> Result<Vec<VnRequest>> {
    ensure!(size >= 1, "a virtual network needs a vertex");
    let stretch = stretch(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = Vec::with_capacity(count);
    for _ in 0..count {
        let cpu = (0..size).map(|_| rng.gen_range(1.0..10.0)).collect();
        let mut links = Vec::new();
        for a in 0..size {
            for b in a + 1..size.min(a + 1 + degree) {
                let bw = rng.gen_range(1.0..10.0);
                let latency = rng.gen_range(1.0..4.0) * stretch;
                links.push((a, b, bw, latency));
            }
        }
        pool.push(VnRequest { cpu, links });
    }
    Ok(pool)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Node,
    Link,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Node => "node",
            Stage::Link => "link",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    /// The stage that rejected the request, if any.
    pub rejected: Option<(Stage, String)>,
    pub hosts: Vec<VertexId>,
    pub paths: Vec<Vec<EdgeId>>,
}

impl Embedding {
    pub fn accepted(&self) -> bool {
        self.rejected.is_none()
    }

    fn reject(stage: Stage, reason: String) -> Self {
        Embedding {
            rejected: Some((stage, reason)),
            hosts: Vec::new(),
            paths: Vec::new(),
        }
    }
}

/// Two-stage embedding. Each virtual vertex goes to the unused substrate
/// vertex with the most residual CPU (lowest index on ties), then each
/// virtual edge is routed with `algo` under its bandwidth and latency.
/// Residual CPU (`cpu`) and bandwidth change only if every stage succeeds.
pub fn vne_embed(
    g: &mut Graph,
    cpu: &mut [f64],
    vn: &VnRequest,
    algo: Algorithm,
    cfg: &RouteConfig,
) -> Result<Embedding> {
    ensure!(cpu.len() == g.vertex_count(), "one CPU residual per substrate vertex is needed");
    let mut used = vec![false; cpu.len()];
    let mut hosts = Vec::with_capacity(vn.cpu.len());
    for (i, &demand) in vn.cpu.iter().enumerate() {
        let best = (0..cpu.len())
            .filter(|&v| !used[v] && cpu[v] >= demand)
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if cpu[b] >= cpu[v] => Some(b),
                _ => Some(v),
            });
        let Some(v) = best else {
            return Ok(Embedding::reject(Stage::Node, format!("no host for virtual vertex {i}")));
        };
        used[v] = true;
        hosts.push(VertexId::new(v));
    }

    let p = g.path_arity();
    let saved = g.residuals().to_vec();
    let mut paths: Vec<Vec<EdgeId>> = Vec::with_capacity(vn.links.len());
    let mut failure = None;
    for (j, &(a, b, bw, latency)) in vn.links.iter().enumerate() {
        let mut bounds = vec![f64::INFINITY; p];
        *bounds.first_mut().context("substrate needs a delay metric")? = latency;
        let spec = ConstraintSpec::new(bw)?.with_path_bounds(bounds)?;
        let r = route(algo, g, hosts[a], hosts[b], &spec, cfg)?;
        match r.paths.into_iter().next() {
            Some(path) if r.outcome == Outcome::Found => {
                g.reserve(&path.edges, bw)?;
                paths.push(path.edges);
            }
            _ => {
                failure = Some(format!("virtual edge {j}: {}", r.outcome.as_str()));
                break;
            }
        }
    }
    if let Some(reason) = failure {
        g.set_residuals(&saved)?;
        return Ok(Embedding::reject(Stage::Link, reason));
    }
    for (h, demand) in hosts.iter().zip(&vn.cpu) {
        cpu[h.index()] -= demand;
    }
    Ok(Embedding {
        rejected: None,
        hosts,
        paths,
    })
}
