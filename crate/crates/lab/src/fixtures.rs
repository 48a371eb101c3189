//! Small named graphs used in examples and tests.

use nmroute_core::{EdgeAttr, Graph, Result};

fn named(mut g: Graph, names: &[&str]) -> Result<Graph> {
    g.set_names(names.iter().map(|s| s.to_string()).collect())?;
    Ok(g)
}

/// Four-vertex running example X, A, B, Y. Capacity doubles as link
/// metric 0 (bandwidth); path metrics are `[delay, cost]` and the edge
/// cost equals the cost metric.
///
/// Cheapest path under bandwidth 5, delay 5 and cost 5 is X B A Y.
pub fn figure3() -> Result<Graph> {
    let mut g = Graph::new(false, 4, 1, 2);
    for (u, v, bw, delay, cost) in [
        (0, 1, 5.0, 5.0, 4.0),
        (1, 3, 5.0, 1.0, 1.0),
        (0, 2, 5.0, 1.0, 2.0),
        (2, 1, 5.0, 2.0, 1.0),
        (2, 3, 3.0, 1.0, 3.0),
    ] {
        g.add_edge(u, v, EdgeAttr::new(bw, vec![bw], vec![delay, cost], cost))?;
    }
    named(g, &["X", "A", "B", "Y"])
}

/// Triangle A, B, C with unit costs, capacity 10 and delays A-B 15,
/// A-C 4, C-B 4. The one-hop route A B breaks a delay bound of 10.
pub fn figure1() -> Result<Graph> {
    let mut g = Graph::new(false, 3, 0, 1);
    for (u, v, delay) in [(0, 1, 15.0), (0, 2, 4.0), (2, 1, 4.0)] {
        g.add_edge(u, v, EdgeAttr::new(10.0, vec![], vec![delay], 1.0))?;
    }
    named(g, &["A", "B", "C"])
}

/// Two disjoint edges, 0-1 and 2-3.
pub fn disconnected() -> Result<Graph> {
    let mut g = Graph::new(false, 4, 0, 1);
    g.add_edge(0, 1, EdgeAttr::new(10.0, vec![], vec![1.0], 1.0))?;
    g.add_edge(2, 3, EdgeAttr::new(10.0, vec![], vec![1.0], 1.0))?;
    Ok(g)
}

pub fn by_name(name: &str) -> Option<Result<Graph>> {
    match name {
        "figure3" => Some(figure3()),
        "figure1" => Some(figure1()),
        "disconnected" => Some(disconnected()),
        _ => None,
    }
}

pub const NAMES: [&str; 3] = ["figure3", "figure1", "disconnected"];
