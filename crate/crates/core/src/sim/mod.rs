//! Discrete-event simulation of aliveness monitoring over a fixed
//! subscription graph.
//!
//! Ground truth is a per-node boolean aliveness state toggled by a global
//! renewal process with gamma-distributed inter-arrival times; each change
//! event picks its victim uniformly (a dead victim revives). Two propagation
//! protocols are provided:
//!
//! * [`Protocol::Direct`]: a changing node pushes a notification to every
//!   in-subscriber, delivered after a fixed latency.
//! * [`Protocol::Transitive`]: nodes periodically poll subscription targets
//!   and additionally adopt the target's fresher beliefs about shared
//!   watches, so aliveness data travels multiple hops.
//!
//! Observation happens via probes every `probe_interval_s`: the number of
//! nodes holding at least one wrong belief, and the packets each node
//! handled during the interval.

mod engine;
mod world;

pub use engine::{run_simulation, Simulation};
pub use world::{Belief, WorldState};

use rand::Rng;
use thiserror::Error;

use crate::num::Real;
use crate::topology::{TopologyError, TopologyParams};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{field} must be positive")]
    NonPositive { field: &'static str },
    #[error("direct_latency_s must be non-negative")]
    NegativeLatency,
    #[error("poll_fanout must satisfy 1 <= fanout <= k (got {fanout} with k={k})")]
    BadFanout { fanout: usize, k: usize },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// Propagation protocol selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    Direct,
    Transitive,
}

/// Gamma-distributed inter-arrival times for the global state-change
/// process. The distribution mean equals `mean_interval_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams<F> {
    pub shape: F,
    pub mean_interval_s: F,
}

pub const DEFAULT_GAMMA_SHAPE: f64 = 2.0;

impl<F: Real> GammaParams<F> {
    pub fn new(shape: F, mean_interval_s: F) -> Self {
        GammaParams { shape, mean_interval_s }
    }

    /// Rate given as "pct % of the n nodes change per minute", so the mean
    /// interval between change events is 60 / ((pct/100) * n) seconds.
    pub fn from_rate_pct(pct: F, n: usize) -> Self {
        let mean = F::from_f64(60.0).unwrap() / (pct / F::from_f64(100.0).unwrap())
            / F::from_usize(n).unwrap();
        GammaParams {
            shape: F::from_f64(DEFAULT_GAMMA_SHAPE).unwrap(),
            mean_interval_s: mean,
        }
    }

    pub fn scale(&self) -> F {
        self.mean_interval_s / self.shape
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.shape > F::zero()) {
            return Err(SimError::NonPositive { field: "gamma shape" });
        }
        if !(self.mean_interval_s > F::zero()) {
            return Err(SimError::NonPositive { field: "gamma mean_interval_s" });
        }
        Ok(())
    }

    /// One inter-arrival draw; mean `mean_interval_s`, variance
    /// `shape * scale^2`.
    pub fn sample_interval<R: Rng + ?Sized>(&self, rng: &mut R) -> F {
        F::standard_gamma(rng, self.shape) * self.scale()
    }
}

/// Free-function form of [`GammaParams::sample_interval`].
pub fn sample_gamma_interval<F: Real, R: Rng + ?Sized>(
    params: &GammaParams<F>,
    rng: &mut R,
) -> F {
    params.sample_interval(rng)
}

/// Full configuration of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig<F> {
    pub topology: TopologyParams<F>,
    pub protocol: Protocol,
    pub gamma: GammaParams<F>,
    pub duration_s: F,
    /// Probe interval, the observation unit of time.
    pub probe_interval_s: F,
    /// Push-notification delivery latency (Direct protocol).
    pub direct_latency_s: F,
    /// Per-node poll period (Transitive protocol).
    pub poll_period_s: F,
    /// Distinct targets polled per round (Transitive protocol).
    pub poll_fanout: usize,
    pub sim_seed: u64,
}

pub const DEFAULT_DURATION_S: f64 = 3600.0;
pub const DEFAULT_PROBE_INTERVAL_S: f64 = 1.0;
pub const DEFAULT_DIRECT_LATENCY_S: f64 = 0.1;
pub const DEFAULT_POLL_PERIOD_S: f64 = 1.0;
pub const DEFAULT_POLL_FANOUT: usize = 1;

impl<F: Real> SimConfig<F> {
    /// Configuration with the standard durations and protocol timings.
    pub fn new(
        topology: TopologyParams<F>,
        protocol: Protocol,
        gamma: GammaParams<F>,
        sim_seed: u64,
    ) -> Self {
        SimConfig {
            topology,
            protocol,
            gamma,
            duration_s: F::from_f64(DEFAULT_DURATION_S).unwrap(),
            probe_interval_s: F::from_f64(DEFAULT_PROBE_INTERVAL_S).unwrap(),
            direct_latency_s: F::from_f64(DEFAULT_DIRECT_LATENCY_S).unwrap(),
            poll_period_s: F::from_f64(DEFAULT_POLL_PERIOD_S).unwrap(),
            poll_fanout: DEFAULT_POLL_FANOUT,
            sim_seed,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        self.topology.validate()?;
        self.gamma.validate()?;
        if !(self.duration_s > F::zero()) {
            return Err(SimError::NonPositive { field: "duration_s" });
        }
        if !(self.probe_interval_s > F::zero()) {
            return Err(SimError::NonPositive { field: "probe_interval_s" });
        }
        if !(self.poll_period_s > F::zero()) {
            return Err(SimError::NonPositive { field: "poll_period_s" });
        }
        if !(self.direct_latency_s >= F::zero()) {
            return Err(SimError::NegativeLatency);
        }
        if self.poll_fanout < 1 || self.poll_fanout > self.topology.k {
            return Err(SimError::BadFanout {
                fanout: self.poll_fanout,
                k: self.topology.k,
            });
        }
        Ok(())
    }
}

/// One per-interval observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeRecord<F> {
    pub t: F,
    /// Nodes holding at least one wrong aliveness belief.
    pub inconsistent_count: usize,
    /// Packets handled by all nodes during this interval.
    pub total_packets: u64,
    pub max_node_packets: u64,
    pub mean_node_packets: F,
}

/// All probes of one run plus rollups recomputable from them.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<F> {
    pub probes: Vec<ProbeRecord<F>>,
    pub mean_inconsistencies: F,
    pub min_inconsistencies: usize,
    pub max_inconsistencies: usize,
    /// Mean packets per node per second over the probed intervals.
    pub mean_node_load: F,
    /// Configuration echo, including both seeds.
    pub config: SimConfig<F>,
}

impl<F: Real> RunResult<F> {
    pub(crate) fn from_probes(probes: Vec<ProbeRecord<F>>, config: SimConfig<F>) -> Self {
        let count = probes.len();
        let mut min = usize::MAX;
        let mut max = 0usize;
        let mut sum = F::zero();
        let mut packet_sum: u64 = 0;
        for p in &probes {
            min = min.min(p.inconsistent_count);
            max = max.max(p.inconsistent_count);
            sum += F::from_usize(p.inconsistent_count).unwrap();
            packet_sum += p.total_packets;
        }
        let (mean, load) = if count == 0 {
            (F::zero(), F::zero())
        } else {
            let n = F::from_usize(config.topology.n).unwrap();
            let probed_seconds = F::from_usize(count).unwrap() * config.probe_interval_s;
            (
                sum / F::from_usize(count).unwrap(),
                F::from(packet_sum).unwrap() / n / probed_seconds,
            )
        };
        RunResult {
            probes,
            mean_inconsistencies: mean,
            min_inconsistencies: if count == 0 { 0 } else { min },
            max_inconsistencies: max,
            mean_node_load: load,
            config,
        }
    }
}
