//! Mutable simulation state: ground-truth aliveness, per-node beliefs about
//! watched nodes, and packet counters.
//!
//! Inconsistency is tracked incrementally: `wrong_counts[u]` is the number
//! of out-neighbours of `u` whose believed aliveness disagrees with ground
//! truth, and `inconsistent_nodes` counts nodes with a non-zero entry, so a
//! probe is O(n) regardless of how much happened during the interval.

use rand::Rng;

use crate::graph::{DirectedGraph, NodeId};
use crate::num::Real;
use crate::sim::ProbeRecord;

/// What `u` thinks about one watched node, and how fresh that thought is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Belief<F> {
    pub alive: bool,
    /// Simulation time at which this information was produced.
    pub timestamp: F,
}

/// Full mutable state of one run. Owns the subscription graph.
#[derive(Debug, Clone)]
pub struct WorldState<F> {
    graph: DirectedGraph,
    actual_alive: Vec<bool>,
    /// `beliefs[u][i]` is about `graph.out_neighbors(u)[i]`.
    beliefs: Vec<Vec<Belief<F>>>,
    wrong_counts: Vec<u32>,
    inconsistent_nodes: usize,
    packets_interval: Vec<u64>,
    /// Last event time, for the monotonicity invariant.
    now: F,
    /// Reused buffer of (out-list index, adopted belief) pairs.
    scratch: Vec<(usize, Belief<F>)>,
}

impl<F: Real> WorldState<F> {
    /// Everyone starts alive with correct, time-zero beliefs.
    pub fn new(graph: DirectedGraph) -> Self {
        let n = graph.node_count();
        let beliefs = (0..n as NodeId)
            .map(|u| {
                vec![Belief { alive: true, timestamp: F::zero() }; graph.out_degree(u)]
            })
            .collect();
        WorldState {
            graph,
            actual_alive: vec![true; n],
            beliefs,
            wrong_counts: vec![0; n],
            inconsistent_nodes: 0,
            packets_interval: vec![0; n],
            now: F::zero(),
            scratch: Vec::new(),
        }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn actual_alive(&self, v: NodeId) -> bool {
        self.actual_alive[v as usize]
    }

    /// `u`'s current belief about `v`, or None when `u` does not watch `v`.
    pub fn belief(&self, u: NodeId, v: NodeId) -> Option<Belief<F>> {
        let idx = self.graph.out_neighbors(u).binary_search(&v).ok()?;
        Some(self.beliefs[u as usize][idx])
    }

    pub fn believed_alive(&self, u: NodeId, v: NodeId) -> Option<bool> {
        self.belief(u, v).map(|b| b.alive)
    }

    /// Nodes currently holding at least one wrong aliveness belief.
    /// Dead observers count too: the probe is a pure function of state.
    pub fn probe_inconsistencies(&self) -> usize {
        self.inconsistent_nodes
    }

    /// Packets node `u` has handled since the last probe.
    pub fn interval_packets(&self, u: NodeId) -> u64 {
        self.packets_interval[u as usize]
    }

    /// Charge `count` packets to `u` (protocol send costs).
    pub fn add_packets(&mut self, u: NodeId, count: u64) {
        self.packets_interval[u as usize] += count;
    }

    /// Toggle ground truth for `node` at time `t` (a dead node revives).
    ///
    /// Updates inconsistency bookkeeping for every in-subscriber. Protocol
    /// side effects (notification scheduling, send packets) are the
    /// engine's job.
    pub fn apply_state_change(&mut self, node: NodeId, t: F) {
        self.advance_to(t);
        let now_alive = !self.actual_alive[node as usize];
        self.actual_alive[node as usize] = now_alive;
        // every watcher's belief about `node` just flipped correctness
        for i in 0..self.graph.in_degree(node) {
            let u = self.graph.in_neighbors(node)[i];
            let idx = self
                .graph
                .out_neighbors(u)
                .binary_search(&node)
                .expect("in/out adjacency is consistent");
            let now_wrong = self.beliefs[u as usize][idx].alive != now_alive;
            self.note_wrongness_flip(u, now_wrong);
        }
    }

    /// Direct-protocol delivery: `u` receives `(alive, sent_at)` about
    /// `about` and adopts it only if strictly fresher than what it holds.
    pub fn deliver_direct(&mut self, u: NodeId, about: NodeId, alive: bool, sent_at: F, t: F) {
        self.advance_to(t);
        self.packets_interval[u as usize] += 1;
        let idx = self
            .graph
            .out_neighbors(u)
            .binary_search(&about)
            .expect("notifications only go to subscribers");
        if sent_at > self.beliefs[u as usize][idx].timestamp {
            self.set_belief_at(u, idx, Belief { alive, timestamp: sent_at });
        }
    }

    /// One poll round of node `u`: up to `fanout` distinct targets drawn
    /// uniformly from its subscription list. Dead nodes do not poll.
    pub fn poll_round<R: Rng + ?Sized>(&mut self, u: NodeId, t: F, fanout: usize, rng: &mut R) {
        if !self.actual_alive[u as usize] {
            return;
        }
        let out_deg = self.graph.out_degree(u);
        if out_deg == 0 {
            return;
        }
        let picks = rand::seq::index::sample(rng, out_deg, fanout.min(out_deg));
        for i in picks {
            let v = self.graph.out_neighbors(u)[i];
            self.poll_target(u, v, t);
        }
    }

    /// `u` polls one subscription target `v` at time `t`.
    ///
    /// Dead target: the failed attempt itself is a truthful death detection;
    /// `u` records `v` dead as of `t` (1 packet at `u`). Alive target: `u`
    /// adopts `v`'s true self-state as of `t`, plus `v`'s strictly fresher
    /// beliefs about every node both of them watch (1 packet at `u` and at
    /// `v`).
    pub fn poll_target(&mut self, u: NodeId, v: NodeId, t: F) {
        debug_assert_ne!(u, v, "no self-subscriptions, so no self-polls");
        self.advance_to(t);
        self.packets_interval[u as usize] += 1;
        if !self.actual_alive[v as usize] {
            self.set_belief(u, v, Belief { alive: false, timestamp: t });
            return;
        }
        self.packets_interval[v as usize] += 1;
        self.set_belief(u, v, Belief { alive: true, timestamp: t });
        let mut updates = std::mem::take(&mut self.scratch);
        updates.clear();
        {
            let out_u = self.graph.out_neighbors(u);
            let out_v = self.graph.out_neighbors(v);
            let (mut iu, mut iv) = (0, 0);
            while iu < out_u.len() && iv < out_v.len() {
                match out_u[iu].cmp(&out_v[iv]) {
                    std::cmp::Ordering::Less => iu += 1,
                    std::cmp::Ordering::Greater => iv += 1,
                    std::cmp::Ordering::Equal => {
                        let theirs = self.beliefs[v as usize][iv];
                        let mine = self.beliefs[u as usize][iu];
                        if theirs.timestamp > mine.timestamp {
                            updates.push((iu, theirs));
                        }
                        iu += 1;
                        iv += 1;
                    }
                }
            }
        }
        for &(idx, belief) in &updates {
            self.set_belief_at(u, idx, belief);
        }
        updates.clear();
        self.scratch = updates;
    }

    /// Close the current observation interval: report and reset packet
    /// counters, report the standing inconsistency count.
    pub fn probe(&mut self, t: F) -> ProbeRecord<F> {
        self.advance_to(t);
        let mut total: u64 = 0;
        let mut max: u64 = 0;
        for c in &mut self.packets_interval {
            total += *c;
            max = max.max(*c);
            *c = 0;
        }
        ProbeRecord {
            t,
            inconsistent_count: self.inconsistent_nodes,
            total_packets: total,
            max_node_packets: max,
            mean_node_packets: F::from(total).unwrap()
                / F::from_usize(self.node_count()).unwrap(),
        }
    }

    fn advance_to(&mut self, t: F) {
        debug_assert!(t >= self.now, "event times must be non-decreasing");
        self.now = t;
    }

    fn set_belief(&mut self, u: NodeId, v: NodeId, belief: Belief<F>) {
        let idx = self
            .graph
            .out_neighbors(u)
            .binary_search(&v)
            .expect("beliefs exist exactly for out-neighbours");
        self.set_belief_at(u, idx, belief);
    }

    fn set_belief_at(&mut self, u: NodeId, idx: usize, belief: Belief<F>) {
        debug_assert!(belief.timestamp <= self.now, "beliefs cannot come from the future");
        let subject = self.graph.out_neighbors(u)[idx];
        let actual = self.actual_alive[subject as usize];
        let was_wrong = self.beliefs[u as usize][idx].alive != actual;
        let now_wrong = belief.alive != actual;
        self.beliefs[u as usize][idx] = belief;
        if was_wrong != now_wrong {
            self.note_wrongness_flip(u, now_wrong);
        }
    }

    /// One belief of `u` changed correctness in the given direction.
    fn note_wrongness_flip(&mut self, u: NodeId, now_wrong: bool) {
        let u = u as usize;
        if now_wrong {
            self.wrong_counts[u] += 1;
            if self.wrong_counts[u] == 1 {
                self.inconsistent_nodes += 1;
            }
        } else {
            self.wrong_counts[u] -= 1;
            if self.wrong_counts[u] == 0 {
                self.inconsistent_nodes -= 1;
            }
        }
    }
}
