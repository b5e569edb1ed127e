//! Directed complex-network toolkit and subscription-aliveness simulator.
//!
//! The crate has three layers:
//!
//! * [`graph`] and [`metrics`] hold a compact directed-graph container
//!   (an edge `u -> v` means "u subscribes to v's state") together with the
//!   structural measurements used to characterise a topology: directed
//!   transitivity, average shortest-path length over reachable pairs, and
//!   degree histograms.
//! * [`topology`] provides seeded generators for four directed network
//!   families: a rewired ring lattice (small world), a preferential-attachment
//!   growth model with edge inversion (scale free), a deactivation-based
//!   hybrid model with mixing parameter `mu` interpolating between the two,
//!   and a uniform-random baseline.
//! * [`sim`] runs a deterministic discrete-event simulation of node aliveness
//!   changes and view propagation over a fixed subscription graph, probing
//!   the number of inconsistent nodes and the per-node packet load once per
//!   interval. [`stats`] aggregates replicated runs into means, extrema and
//!   Student-t 95% confidence intervals.
//!
//! All numeric code is generic over the scalar type through the [`num::Real`]
//! trait; `f32` and `f64` are supported. Concrete `f64` aliases for the main
//! types are re-exported at the crate root.

pub mod graph;
pub mod metrics;
pub mod num;
pub mod seed;
pub mod sim;
pub mod stats;
pub mod topology;

pub use graph::{DirectedGraph, GraphError, NodeId};
pub use num::Real;

/// `f64` graph metrics.
pub type Metrics64 = metrics::GraphMetrics<f64>;
/// `f64` topology parameters.
pub type TopologyParams64 = topology::TopologyParams<f64>;
/// `f64` simulation configuration.
pub type SimConfig64 = sim::SimConfig<f64>;
/// `f64` gamma state-change process parameters.
pub type GammaParams64 = sim::GammaParams<f64>;
/// `f64` single-run result.
pub type RunResult64 = sim::RunResult<f64>;
/// `f64` cross-run summary.
pub type Summary64 = stats::Summary<f64>;
