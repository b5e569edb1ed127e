//! Helpers shared by the oracle test binaries.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use watchnet_core::{DirectedGraph, NodeId};

/// Random digraph with `n` nodes and per-node out-degree in `0..=max_deg`,
/// targets distinct and non-self. Built independently of the library's
/// generators.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> DirectedGraph {
    let cap = max_deg.min(n.saturating_sub(1));
    let mut out: Vec<Vec<NodeId>> = Vec::with_capacity(n);
    for u in 0..n {
        let d = rng.gen_range(0..=cap);
        let mut candidates: Vec<NodeId> =
            (0..n as NodeId).filter(|&v| v as usize != u).collect();
        candidates.shuffle(rng);
        candidates.truncate(d);
        out.push(candidates);
    }
    DirectedGraph::from_out_lists(out).expect("construction is valid by design")
}
