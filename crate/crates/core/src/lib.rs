//! Exact constrained shortest path search over capacitated multigraphs.
//!
//! The crate implements the neighborhoods method (a forward pass that grows
//! hop-count levels from the source, followed by a backward enumeration from
//! the destination restricted to those levels) in three regimes:
//!
//! * [`csp::solve_csp`]: the general case with any number of link and path
//!   constraints, optional dominance and look-back pruning, and a k-best mode;
//! * [`fast::solve_l1`]: link constraints plus one additive path constraint,
//!   returning the fewest-hop feasible path in polynomial time;
//! * [`fast::solve_l`]: link constraints only.
//!
//! [`baselines`] carries the comparison algorithms: extended Dijkstra,
//! iterative Bellman-Ford, exhaustive BFS with look-ahead, and Yen-style
//! k shortest paths.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled; wall-clock timing and time limits are only available with `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod baselines;
pub mod csp;
mod error;
pub mod fast;
pub mod graph;
pub mod label;
pub mod search;
mod timer;

pub use error::{Error, Result};
pub use graph::{
    edge_feasible, path_distance, path_feasible, Adjacent, BoundKind, ConstraintSpec, Edge,
    EdgeAttr, EdgeId, Graph, LinkBound, VertexId,
};
pub use label::{dominates, PathLabel};
pub use search::{Counters, Objective, Outcome, RouteResult, SearchOptions};
