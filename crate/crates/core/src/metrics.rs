//! Structural metrics for directed graphs.
//!
//! Transitivity here is the global two-path closure ratio: the fraction of
//! directed paths `i -> j -> k` (with `i != k`) that are closed by the chord
//! `i -> k`. On a graph whose edges all come in reciprocal pairs this agrees
//! with the familiar undirected global transitivity.
//!
//! Path length is the mean shortest-path hop count over *reachable* ordered
//! pairs; the reachable fraction is reported alongside, since feed-forward
//! growth models leave many pairs unreachable.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{DirectedGraph, NodeId};
use crate::num::Real;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("sampled mode requires 1 <= sources <= n (got {sources} for n={nodes})")]
    BadSourceCount { sources: usize, nodes: usize },
}

/// How to compute average path length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathLengthMode {
    /// One BFS per node; averages over all reachable ordered pairs.
    Exact,
    /// BFS from `sources` distinct uniformly chosen source nodes.
    Sampled { sources: usize, seed: u64 },
}

/// Mean hops over reachable ordered pairs plus the fraction reachable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLength<F> {
    pub avg: F,
    pub reachable_fraction: F,
    pub exact: bool,
}

/// Degree -> node count maps; each histogram's counts sum to n.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeHistograms {
    pub out_degree: BTreeMap<usize, usize>,
    pub in_degree: BTreeMap<usize, usize>,
    pub total_degree: BTreeMap<usize, usize>,
}

impl DegreeHistograms {
    pub fn max_total_degree(&self) -> usize {
        self.total_degree.keys().next_back().copied().unwrap_or(0)
    }

    /// Median total degree (lower median for even node counts).
    pub fn median_total_degree(&self) -> usize {
        let n: usize = self.total_degree.values().sum();
        let mut seen = 0;
        for (&deg, &count) in &self.total_degree {
            seen += count;
            if seen * 2 > n {
                return deg;
            }
        }
        0
    }
}

/// Bundle of the structural metrics used to validate a generated topology.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphMetrics<F> {
    pub avg_path_length: F,
    pub reachable_pair_fraction: F,
    pub transitivity: F,
    pub out_degree_histogram: BTreeMap<usize, usize>,
    pub total_degree_histogram: BTreeMap<usize, usize>,
    /// True when path length was computed exactly rather than sampled.
    pub exact: bool,
}

/// Node count above which [`graph_metrics`] switches to sampled path length.
pub const EXACT_PATH_LENGTH_LIMIT: usize = 2000;
/// Sources used by the default sampled path-length mode.
pub const DEFAULT_SAMPLE_SOURCES: usize = 400;

/// Global directed transitivity in `[0, 1]`.
///
/// Counts ordered triples `(i, j, k)` with `i -> j` and `j -> k` and
/// `i != k`, and returns the fraction closed by `i -> k`. Returns 0 when the
/// graph has no such two-paths.
pub fn transitivity<F: Real>(g: &DirectedGraph) -> F {
    let mut two_paths: u64 = 0;
    let mut closed: u64 = 0;
    for j in 0..g.node_count() as NodeId {
        let out = g.out_neighbors(j);
        if out.is_empty() {
            continue;
        }
        for &i in g.in_neighbors(j) {
            // k = i would need the self-loop i -> i, so subtract that case
            two_paths += out.len() as u64;
            if g.has_edge(j, i) {
                two_paths -= 1;
            }
            closed += sorted_intersection_len(g.out_neighbors(i), out);
        }
    }
    if two_paths == 0 {
        F::zero()
    } else {
        F::from(closed).unwrap() / F::from(two_paths).unwrap()
    }
}

/// Number of common elements of two ascending slices.
fn sorted_intersection_len(a: &[NodeId], b: &[NodeId]) -> u64 {
    let mut count = 0;
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].cmp(&b[ib]) {
            std::cmp::Ordering::Less => ia += 1,
            std::cmp::Ordering::Greater => ib += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                ia += 1;
                ib += 1;
            }
        }
    }
    count
}

/// Average shortest-path length over reachable ordered pairs.
///
/// Returns 0 for both fields when no pair is reachable. Deterministic for a
/// given graph, mode and seed.
pub fn average_path_length<F: Real>(
    g: &DirectedGraph,
    mode: PathLengthMode,
) -> Result<PathLength<F>, MetricsError> {
    let n = g.node_count();
    let (sources, exact): (Vec<NodeId>, bool) = match mode {
        PathLengthMode::Exact => ((0..n as NodeId).collect(), true),
        PathLengthMode::Sampled { sources, seed } => {
            if sources == 0 || sources > n {
                return Err(MetricsError::BadSourceCount { sources, nodes: n });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picked = rand::seq::index::sample(&mut rng, n, sources)
                .iter()
                .map(|i| i as NodeId)
                .collect();
            (picked, sources == n)
        }
    };

    let mut dist: Vec<u32> = vec![u32::MAX; n];
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    let mut hop_sum: u64 = 0;
    let mut reachable_pairs: u64 = 0;
    for &s in &sources {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[s as usize] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in g.out_neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du + 1;
                    hop_sum += (du + 1) as u64;
                    reachable_pairs += 1;
                    queue.push_back(v);
                }
            }
        }
    }

    let total_pairs = sources.len() as u64 * (n as u64 - 1);
    let (avg, fraction) = if reachable_pairs == 0 {
        (F::zero(), F::zero())
    } else {
        (
            F::from(hop_sum).unwrap() / F::from(reachable_pairs).unwrap(),
            F::from(reachable_pairs).unwrap() / F::from(total_pairs).unwrap(),
        )
    };
    Ok(PathLength {
        avg,
        reachable_fraction: fraction,
        exact,
    })
}

/// Out-, in- and total-degree histograms.
pub fn degree_histograms(g: &DirectedGraph) -> DegreeHistograms {
    let mut h = DegreeHistograms::default();
    for v in 0..g.node_count() as NodeId {
        *h.out_degree.entry(g.out_degree(v)).or_insert(0) += 1;
        *h.in_degree.entry(g.in_degree(v)).or_insert(0) += 1;
        *h.total_degree.entry(g.total_degree(v)).or_insert(0) += 1;
    }
    h
}

/// Default path-length mode for a graph of `n` nodes: exact for small
/// graphs, 400 sampled sources (seeded from the graph seed) above
/// [`EXACT_PATH_LENGTH_LIMIT`].
pub fn default_path_mode(n: usize, seed: u64) -> PathLengthMode {
    if n <= EXACT_PATH_LENGTH_LIMIT {
        PathLengthMode::Exact
    } else {
        PathLengthMode::Sampled {
            sources: DEFAULT_SAMPLE_SOURCES.min(n),
            seed,
        }
    }
}

/// All metrics for one graph under the given path-length mode.
pub fn graph_metrics<F: Real>(
    g: &DirectedGraph,
    mode: PathLengthMode,
) -> Result<GraphMetrics<F>, MetricsError> {
    let paths = average_path_length::<F>(g, mode)?;
    let hists = degree_histograms(g);
    Ok(GraphMetrics {
        avg_path_length: paths.avg,
        reachable_pair_fraction: paths.reachable_fraction,
        transitivity: transitivity(g),
        out_degree_histogram: hists.out_degree,
        total_degree_histogram: hists.total_degree,
        exact: paths.exact,
    })
}
