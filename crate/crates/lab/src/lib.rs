//! Experiment harness around `nmroute-core`: random substrates, the text
//! graph format, traffic engineering, virtual network embedding, the
//! scalability benchmark, the energy model, and the `nmroute` command line.

pub mod cli;
pub mod fixtures;
pub mod format;
pub mod report;
pub mod services;
pub mod topology;
