//! Seeded generators for directed complex-network families.
//!
//! All generators are deterministic functions of their parameters: the same
//! `TopologyParams` always yields the same edge set. Preferential attachment
//! (PA) draws are weighted by total degree (in + out) via a degree pool that
//! holds one slot per degree unit.
//!
//! Edge direction follows the subscription convention: `u -> v` means `u`
//! watches `v`. Growth models first pick targets, then independently invert
//! each new edge's direction with probability `p_invert`, which introduces
//! cycles into the otherwise feed-forward growth.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{DirectedGraph, NodeId};
use crate::num::Real;

/// Rewiring probability used by the referenced small-world construction.
pub const DEFAULT_P_REWIRE: f64 = 0.1;
/// Edge inversion probability used by the referenced growth constructions.
pub const DEFAULT_P_INVERT: f64 = 0.15;

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("k must be even for the small-world lattice, got {0}")]
    OddK(usize),
    #[error("k={k} invalid for n={n}: {reason}")]
    BadDegree { k: usize, n: usize, reason: &'static str },
    #[error("{name}={value} must lie in [0,1]")]
    BadProbability { name: &'static str, value: f64 },
    #[error("node count {0} exceeds the u32 id space")]
    TooManyNodes(usize),
}

/// Generator family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyKind {
    SmallWorld,
    ScaleFree,
    KlemmEguiluz,
    Random,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TopologyKind::SmallWorld => "sw",
            TopologyKind::ScaleFree => "sf",
            TopologyKind::KlemmEguiluz => "ke",
            TopologyKind::Random => "random",
        };
        f.write_str(name)
    }
}

impl FromStr for TopologyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sw" | "small-world" => Ok(TopologyKind::SmallWorld),
            "sf" | "scale-free" => Ok(TopologyKind::ScaleFree),
            "ke" | "klemm-eguiluz" => Ok(TopologyKind::KlemmEguiluz),
            "random" => Ok(TopologyKind::Random),
            other => Err(format!(
                "unknown topology kind '{other}' (expected sw, sf, ke or random)"
            )),
        }
    }
}

/// Full parameter set for one generated graph.
///
/// `mu` only affects [`TopologyKind::KlemmEguiluz`], `p_rewire` only
/// [`TopologyKind::SmallWorld`], and `p_invert` the two growth models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyParams<F> {
    pub kind: TopologyKind,
    pub n: usize,
    /// Subscriptions per node (out-degree target before inversion).
    pub k: usize,
    pub mu: F,
    pub p_rewire: F,
    pub p_invert: F,
    pub seed: u64,
}

impl<F: Real> TopologyParams<F> {
    fn with_kind(kind: TopologyKind, n: usize, k: usize, seed: u64) -> Self {
        TopologyParams {
            kind,
            n,
            k,
            mu: F::zero(),
            p_rewire: F::from_f64(DEFAULT_P_REWIRE).unwrap(),
            p_invert: F::from_f64(DEFAULT_P_INVERT).unwrap(),
            seed,
        }
    }

    pub fn small_world(n: usize, k: usize, seed: u64) -> Self {
        Self::with_kind(TopologyKind::SmallWorld, n, k, seed)
    }

    pub fn scale_free(n: usize, k: usize, seed: u64) -> Self {
        Self::with_kind(TopologyKind::ScaleFree, n, k, seed)
    }

    pub fn ke(n: usize, k: usize, mu: F, seed: u64) -> Self {
        let mut p = Self::with_kind(TopologyKind::KlemmEguiluz, n, k, seed);
        p.mu = mu;
        p
    }

    pub fn random(n: usize, k: usize, seed: u64) -> Self {
        Self::with_kind(TopologyKind::Random, n, k, seed)
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        check_node_space(self.n)?;
        check_prob("mu", self.mu)?;
        check_prob("p_rewire", self.p_rewire)?;
        check_prob("p_invert", self.p_invert)?;
        match self.kind {
            TopologyKind::SmallWorld => check_lattice_degree(self.n, self.k),
            TopologyKind::ScaleFree | TopologyKind::KlemmEguiluz => {
                check_growth_degree(self.n, self.k)
            }
            TopologyKind::Random => check_random_degree(self.n, self.k),
        }
    }
}

/// Default subscription count per node, round(sqrt(n)).
pub fn default_k(n: usize) -> usize {
    (n as f64).sqrt().round() as usize
}

/// Generate the graph described by `params`.
pub fn generate<F: Real>(params: &TopologyParams<F>) -> Result<DirectedGraph, TopologyError> {
    params.validate()?;
    match params.kind {
        TopologyKind::SmallWorld => {
            gen_small_world(params.n, params.k, params.p_rewire, params.seed)
        }
        TopologyKind::ScaleFree => {
            gen_scale_free(params.n, params.k, params.p_invert, params.seed)
        }
        TopologyKind::KlemmEguiluz => {
            gen_ke(params.n, params.k, params.mu, params.p_invert, params.seed)
        }
        TopologyKind::Random => gen_random(params.n, params.k, params.seed),
    }
}

fn check_node_space(n: usize) -> Result<(), TopologyError> {
    if n > u32::MAX as usize {
        Err(TopologyError::TooManyNodes(n))
    } else {
        Ok(())
    }
}

fn check_prob<F: Real>(name: &'static str, value: F) -> Result<(), TopologyError> {
    if value >= F::zero() && value <= F::one() {
        Ok(())
    } else {
        Err(TopologyError::BadProbability {
            name,
            value: value.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn check_lattice_degree(n: usize, k: usize) -> Result<(), TopologyError> {
    check_node_space(n)?;
    if k % 2 != 0 {
        return Err(TopologyError::OddK(k));
    }
    if k < 1 || k >= n {
        return Err(TopologyError::BadDegree { k, n, reason: "need 1 <= k < n" });
    }
    Ok(())
}

fn check_growth_degree(n: usize, k: usize) -> Result<(), TopologyError> {
    check_node_space(n)?;
    // n = k is allowed and yields the initial network alone
    if k < 2 || n < k {
        return Err(TopologyError::BadDegree { k, n, reason: "need 2 <= k <= n" });
    }
    Ok(())
}

fn check_random_degree(n: usize, k: usize) -> Result<(), TopologyError> {
    check_node_space(n)?;
    if k < 1 || k >= n {
        return Err(TopologyError::BadDegree { k, n, reason: "need 1 <= k < n" });
    }
    Ok(())
}

/// One slot per degree unit; drawing a uniform slot is a draw proportional
/// to total degree.
#[derive(Default)]
struct DegreePool {
    slots: Vec<NodeId>,
}

impl DegreePool {
    fn push_edge(&mut self, u: NodeId, v: NodeId) {
        self.slots.push(u);
        self.slots.push(v);
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        self.slots[rng.gen_range(0..self.slots.len())]
    }
}

/// Directed Watts-Strogatz: ring lattice with out-edges to the k nearest
/// neighbours (k/2 per side), then each edge head independently rewired to a
/// uniform node with probability `p_rewire`. Out-degree stays exactly k.
pub fn gen_small_world<F: Real>(
    n: usize,
    k: usize,
    p_rewire: F,
    seed: u64,
) -> Result<DirectedGraph, TopologyError> {
    check_lattice_degree(n, k)?;
    check_prob("p_rewire", p_rewire)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<NodeId>> = (0..n)
        .map(|i| {
            (1..=k / 2)
                .flat_map(|d| [((i + d) % n) as NodeId, ((i + n - d) % n) as NodeId])
                .collect()
        })
        .collect();
    // With k = n-1 every other node is already a target, so no head can move.
    if k + 1 < n {
        for u in 0..n {
            for slot in 0..k {
                if F::unit_uniform(&mut rng) >= p_rewire {
                    continue;
                }
                // the current head stays in the exclusion set, so a rewired
                // edge always actually moves
                let new_head = loop {
                    let cand = rng.gen_range(0..n) as NodeId;
                    if cand as usize != u && !out[u].contains(&cand) {
                        break cand;
                    }
                };
                out[u][slot] = new_head;
            }
        }
    }
    Ok(DirectedGraph::from_out_lists(out).expect("generator preserves graph invariants"))
}

/// Directed Yuan-Wang scale-free network.
///
/// The initial network is a bidirectional star: nodes 0..k-2 each connected
/// to and from node k-1, giving 2(k-1) edges. Every later node joins with k
/// edges whose targets are PA draws (distinct, non-self); each edge is then
/// inverted with probability `p_invert`. Total edges: 2(k-1) + (n-k)k.
pub fn gen_scale_free<F: Real>(
    n: usize,
    k: usize,
    p_invert: F,
    seed: u64,
) -> Result<DirectedGraph, TopologyError> {
    check_growth_degree(n, k)?;
    check_prob("p_invert", p_invert)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut pool = DegreePool::default();
    let hub = (k - 1) as NodeId;
    for i in 0..hub {
        out[hub as usize].push(i);
        out[i as usize].push(hub);
        pool.push_edge(hub, i);
        pool.push_edge(i, hub);
    }
    let mut targets: Vec<NodeId> = Vec::with_capacity(k);
    for j in k..n {
        targets.clear();
        while targets.len() < k {
            let cand = pool.draw(&mut rng);
            if cand as usize != j && !targets.contains(&cand) {
                targets.push(cand);
            }
        }
        for &tgt in &targets {
            if F::unit_uniform(&mut rng) < p_invert {
                out[tgt as usize].push(j as NodeId);
            } else {
                out[j].push(tgt);
            }
            pool.push_edge(j as NodeId, tgt);
        }
    }
    Ok(DirectedGraph::from_out_lists(out).expect("generator preserves graph invariants"))
}

/// Directed Klemm-Eguiluz hybrid network with mixing parameter `mu`.
///
/// Starts from a complete digraph on k active nodes. Each new node places
/// one edge per active node; with probability `mu` that slot becomes a
/// long-range connection whose target is a PA draw over all nodes instead.
/// Edges are inverted with probability `p_invert`. The new node activates
/// and one previously active node deactivates with probability proportional
/// to the inverse of its current total degree.
/// Total edges: k(k-1) + (n-k)k.
pub fn gen_ke<F: Real>(
    n: usize,
    k: usize,
    mu: F,
    p_invert: F,
    seed: u64,
) -> Result<DirectedGraph, TopologyError> {
    check_growth_degree(n, k)?;
    check_prob("mu", mu)?;
    check_prob("p_invert", p_invert)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut pool = DegreePool::default();
    let mut degree = vec![0usize; n];
    for u in 0..k {
        for v in 0..k {
            if u != v {
                out[u].push(v as NodeId);
                pool.push_edge(u as NodeId, v as NodeId);
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    // ascending by construction; new ids only ever grow
    let mut active: Vec<NodeId> = (0..k as NodeId).collect();
    let mut targets: Vec<NodeId> = Vec::with_capacity(k);
    for j in k..n {
        targets.clear();
        for idx in 0..active.len() {
            let a = active[idx];
            let long_range = F::unit_uniform(&mut rng) < mu;
            // An earlier long-range draw may already have taken the active
            // node; fall back to PA so j still places exactly k edges.
            let tgt = if long_range || targets.contains(&a) {
                loop {
                    let cand = pool.draw(&mut rng);
                    if cand as usize != j && !targets.contains(&cand) {
                        break cand;
                    }
                }
            } else {
                a
            };
            targets.push(tgt);
        }
        for &tgt in &targets {
            if F::unit_uniform(&mut rng) < p_invert {
                out[tgt as usize].push(j as NodeId);
            } else {
                out[j].push(tgt);
            }
            pool.push_edge(j as NodeId, tgt);
            degree[j] += 1;
            degree[tgt as usize] += 1;
        }
        // deactivate one of the k previously active nodes, p ~ 1/degree
        let mut weight_sum = F::zero();
        for &a in &active {
            weight_sum += F::one() / F::from_usize(degree[a as usize]).unwrap();
        }
        let mut pick = F::unit_uniform(&mut rng) * weight_sum;
        let mut victim = active.len() - 1;
        for (idx, &a) in active.iter().enumerate() {
            let w = F::one() / F::from_usize(degree[a as usize]).unwrap();
            if pick < w {
                victim = idx;
                break;
            }
            pick -= w;
        }
        active.remove(victim);
        active.push(j as NodeId);
    }
    Ok(DirectedGraph::from_out_lists(out).expect("generator preserves graph invariants"))
}

/// Uniform-random baseline: every node subscribes to exactly k distinct
/// uniformly chosen other nodes.
pub fn gen_random(n: usize, k: usize, seed: u64) -> Result<DirectedGraph, TopologyError> {
    check_random_degree(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<NodeId>> = Vec::with_capacity(n);
    for u in 0..n {
        // sample from n-1 candidates, shifting indices >= u past the self slot
        let picks = rand::seq::index::sample(&mut rng, n - 1, k);
        out.push(
            picks
                .iter()
                .map(|i| if i >= u { (i + 1) as NodeId } else { i as NodeId })
                .collect(),
        );
    }
    Ok(DirectedGraph::from_out_lists(out).expect("generator preserves graph invariants"))
}
