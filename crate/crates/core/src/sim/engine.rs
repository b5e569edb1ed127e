//! Event loop: a binary heap of timestamped events with deterministic
//! (time, sequence) tie-breaking.
//!
//! Three independent RNG streams are derived from `sim_seed`: state changes,
//! poll target choices, and poll phase offsets. Keeping the change stream
//! separate means the ground-truth trajectory is identical across topologies
//! and protocols run with the same `sim_seed` (common random numbers).

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DirectedGraph, NodeId};
use crate::num::Real;
use crate::seed;
use crate::sim::{Protocol, RunResult, SimConfig, SimError, WorldState};
use crate::topology;

#[derive(Debug, Clone, Copy, PartialEq)]
enum EventKind<F> {
    /// Renewal-process change; the victim is drawn when processed.
    StateChange,
    /// Externally injected change of a fixed node (test scenarios).
    ManualChange(NodeId),
    Deliver { receiver: NodeId, about: NodeId, alive: bool, sent_at: F },
    Poll(NodeId),
    Probe(u64),
}

#[derive(Debug)]
struct Event<F> {
    time: F,
    seq: u64,
    kind: EventKind<F>,
}

impl<F: Real> PartialEq for Event<F> {
    fn eq(&self, other: &Self) -> bool {
        self.time == other.time && self.seq == other.seq
    }
}

impl<F: Real> Eq for Event<F> {}

impl<F: Real> PartialOrd for Event<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Real> Ord for Event<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time
            .partial_cmp(&other.time)
            .expect("event times are never NaN")
            .then_with(|| self.seq.cmp(&other.seq))
    }
}

/// One configured, runnable simulation.
pub struct Simulation<F> {
    world: WorldState<F>,
    config: SimConfig<F>,
    queue: BinaryHeap<Reverse<Event<F>>>,
    next_seq: u64,
    changes_rng: ChaCha8Rng,
    polls_rng: ChaCha8Rng,
    /// floor(duration / probe_interval), fixed up front.
    probe_total: u64,
    probes: Vec<crate::sim::ProbeRecord<F>>,
}

impl<F: Real> Simulation<F> {
    /// Generate the configured topology and set up the initial schedule.
    pub fn new(config: SimConfig<F>) -> Result<Self, SimError> {
        config.validate()?;
        let graph = topology::generate(&config.topology)?;
        Self::with_graph(config, graph)
    }

    /// Run on a caller-supplied graph (fixtures, pre-generated files).
    /// The graph overrides `config.topology` as the subscription relation.
    pub fn with_graph(config: SimConfig<F>, graph: DirectedGraph) -> Result<Self, SimError> {
        config.validate()?;
        let probe_total = (config.duration_s / config.probe_interval_s)
            .floor()
            .to_u64()
            .expect("probe count fits in u64");
        let mut sim = Simulation {
            world: WorldState::new(graph),
            config,
            queue: BinaryHeap::new(),
            next_seq: 0,
            changes_rng: ChaCha8Rng::seed_from_u64(seed::derive(config.sim_seed, 0)),
            polls_rng: ChaCha8Rng::seed_from_u64(seed::derive(config.sim_seed, 1)),
            probe_total,
            probes: Vec::with_capacity(probe_total as usize),
        };
        let first_change = sim.config.gamma.sample_interval(&mut sim.changes_rng);
        sim.schedule(first_change, EventKind::StateChange);
        if sim.config.protocol == Protocol::Transitive {
            let mut phases_rng = ChaCha8Rng::seed_from_u64(seed::derive(config.sim_seed, 2));
            for u in 0..sim.world.node_count() as NodeId {
                let phase = F::unit_uniform(&mut phases_rng) * sim.config.poll_period_s;
                sim.schedule(phase, EventKind::Poll(u));
            }
        }
        if probe_total >= 1 {
            sim.schedule(sim.config.probe_interval_s, EventKind::Probe(1));
        }
        Ok(sim)
    }

    pub fn world(&self) -> &WorldState<F> {
        &self.world
    }

    pub fn config(&self) -> &SimConfig<F> {
        &self.config
    }

    /// Inject a state change of `node` at time `t` (in addition to the
    /// renewal process). Must be called before [`Simulation::run`].
    pub fn schedule_state_change(&mut self, node: NodeId, t: F) {
        self.schedule(t, EventKind::ManualChange(node));
    }

    /// Toggle `node` now and, under Direct, push notifications to all its
    /// in-subscribers (d send packets now, one delivery each after the
    /// configured latency).
    pub fn apply_state_change(&mut self, node: NodeId, t: F) {
        self.world.apply_state_change(node, t);
        if self.config.protocol == Protocol::Direct {
            let d = self.world.graph().in_degree(node);
            if d > 0 {
                self.world.add_packets(node, d as u64);
                let alive = self.world.actual_alive(node);
                let deliver_at = t + self.config.direct_latency_s;
                for i in 0..d {
                    let receiver = self.world.graph().in_neighbors(node)[i];
                    self.schedule(
                        deliver_at,
                        EventKind::Deliver { receiver, about: node, alive, sent_at: t },
                    );
                }
            }
        }
    }

    /// Process events until `duration_s`; returns the probes and rollups.
    pub fn run(mut self) -> RunResult<F> {
        let n = self.world.node_count();
        while let Some(Reverse(ev)) = self.queue.pop() {
            if ev.time > self.config.duration_s {
                break;
            }
            let t = ev.time;
            match ev.kind {
                EventKind::StateChange => {
                    let node = self.changes_rng.gen_range(0..n) as NodeId;
                    let next = t + self.config.gamma.sample_interval(&mut self.changes_rng);
                    self.apply_state_change(node, t);
                    self.schedule(next, EventKind::StateChange);
                }
                EventKind::ManualChange(node) => {
                    self.apply_state_change(node, t);
                }
                EventKind::Deliver { receiver, about, alive, sent_at } => {
                    self.world.deliver_direct(receiver, about, alive, sent_at, t);
                }
                EventKind::Poll(u) => {
                    self.world.poll_round(u, t, self.config.poll_fanout, &mut self.polls_rng);
                    self.schedule(t + self.config.poll_period_s, EventKind::Poll(u));
                }
                EventKind::Probe(idx) => {
                    let record = self.world.probe(t);
                    self.probes.push(record);
                    if idx + 1 <= self.probe_total {
                        let next = F::from(idx + 1).unwrap() * self.config.probe_interval_s;
                        self.schedule(next, EventKind::Probe(idx + 1));
                    }
                }
            }
        }
        RunResult::from_probes(self.probes, self.config)
    }

    fn schedule(&mut self, time: F, kind: EventKind<F>) {
        let seq = self.next_seq;
        self.next_seq += 1;
        self.queue.push(Reverse(Event { time, seq, kind }));
    }
}

/// Generate the topology, run one full simulation, return its probes.
pub fn run_simulation<F: Real>(config: SimConfig<F>) -> Result<RunResult<F>, SimError> {
    Ok(Simulation::new(config)?.run())
}
