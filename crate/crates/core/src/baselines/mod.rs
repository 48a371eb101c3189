//! Reference algorithms the neighborhoods method is measured against.

mod ebfs;
mod edijkstra;
mod ibf;
mod ksp;

pub use ebfs::ebfs;
pub use edijkstra::{edijkstra, shortest_path, Metric};
pub use ibf::ibf;
pub use ksp::ksp;
