//! Metric implementations checked against independent brute-force oracles:
//! triple enumeration for transitivity and Floyd-Warshall for path lengths.

mod common;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use watchnet_core::metrics::{
    average_path_length, degree_histograms, graph_metrics, transitivity, PathLengthMode,
};
use watchnet_core::topology::gen_small_world;
use watchnet_core::{DirectedGraph, NodeId};

/// Transitivity by enumerating every ordered triple.
fn brute_transitivity(g: &DirectedGraph) -> f64 {
    let edges: HashSet<(NodeId, NodeId)> = g.edges().collect();
    let n = g.node_count() as NodeId;
    let mut two_paths: u64 = 0;
    let mut closed: u64 = 0;
    for i in 0..n {
        for j in 0..n {
            if !edges.contains(&(i, j)) {
                continue;
            }
            for k in 0..n {
                if k == i || !edges.contains(&(j, k)) {
                    continue;
                }
                two_paths += 1;
                if edges.contains(&(i, k)) {
                    closed += 1;
                }
            }
        }
    }
    if two_paths == 0 {
        0.0
    } else {
        closed as f64 / two_paths as f64
    }
}

/// (hop sum, reachable ordered pairs) by Floyd-Warshall.
fn brute_paths(g: &DirectedGraph) -> (u64, u64) {
    let n = g.node_count();
    const INF: u32 = u32::MAX / 2;
    let mut dist = vec![vec![INF; n]; n];
    for u in 0..n {
        dist[u][u] = 0;
        for &v in g.out_neighbors(u as NodeId) {
            dist[u][v as usize] = 1;
        }
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = dist[u][m] + dist[m][v];
                if via < dist[u][v] {
                    dist[u][v] = via;
                }
            }
        }
    }
    let mut hop_sum = 0u64;
    let mut pairs = 0u64;
    for u in 0..n {
        for v in 0..n {
            if u != v && dist[u][v] < INF {
                hop_sum += dist[u][v] as u64;
                pairs += 1;
            }
        }
    }
    (hop_sum, pairs)
}

#[test]
fn metrics_match_brute_force_on_150_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    for case in 0..150 {
        let n = rng.gen_range(2..=50);
        let g = common::random_digraph(&mut rng, n, 6);
        let fast: f64 = transitivity(&g);
        let slow = brute_transitivity(&g);
        assert_eq!(fast, slow, "transitivity mismatch in case {case} (n={n})");

        let p = average_path_length::<f64>(&g, PathLengthMode::Exact).unwrap();
        let (hop_sum, pairs) = brute_paths(&g);
        let total = (n * (n - 1)) as u64;
        if pairs == 0 {
            assert_eq!(p.avg, 0.0);
            assert_eq!(p.reachable_fraction, 0.0);
        } else {
            assert_eq!(p.avg, hop_sum as f64 / pairs as f64, "case {case}");
            assert_eq!(p.reachable_fraction, pairs as f64 / total as f64, "case {case}");
        }

        let h = degree_histograms(&g);
        let out_sum: usize = h.out_degree.iter().map(|(d, c)| d * c).sum();
        let in_sum: usize = h.in_degree.iter().map(|(d, c)| d * c).sum();
        assert_eq!(out_sum, g.edge_count());
        assert_eq!(in_sum, g.edge_count());
        let node_sum: usize = h.total_degree.values().sum();
        assert_eq!(node_sum, n);
    }
}

#[test]
fn seeded_30_node_graph_matches_triple_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let g = common::random_digraph(&mut rng, 30, 4);
    let fast: f64 = transitivity(&g);
    assert_eq!(fast, brute_transitivity(&g));
    assert!(fast > 0.0 && fast < 1.0, "fixture should be non-degenerate, got {fast}");
}

#[test]
fn sampled_path_length_close_to_exact_on_small_world() {
    let g = gen_small_world(500, 22, 0.1f64, 77).unwrap();
    let exact = average_path_length::<f64>(&g, PathLengthMode::Exact).unwrap();
    let sampled =
        average_path_length::<f64>(&g, PathLengthMode::Sampled { sources: 100, seed: 5 })
            .unwrap();
    assert!(exact.exact);
    assert!(!sampled.exact);
    let rel = (sampled.avg - exact.avg).abs() / exact.avg;
    assert!(rel < 0.02, "sampled {} vs exact {} (rel {rel})", sampled.avg, exact.avg);
    assert_eq!(exact.reachable_fraction, 1.0);
}

#[test]
fn adding_edges_never_lengthens_paths_when_strongly_connected() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xADDE);
    for _ in 0..50 {
        let n = rng.gen_range(5..=30);
        // a directed cycle is strongly connected; add a few chords
        let mut edges: HashSet<(NodeId, NodeId)> =
            (0..n).map(|u| (u as NodeId, ((u + 1) % n) as NodeId)).collect();
        for _ in 0..rng.gen_range(0..2 * n) {
            let u = rng.gen_range(0..n) as NodeId;
            let v = rng.gen_range(0..n) as NodeId;
            if u != v {
                edges.insert((u, v));
            }
        }
        let g = DirectedGraph::from_edges(n, edges.iter().copied()).unwrap();
        let before = average_path_length::<f64>(&g, PathLengthMode::Exact).unwrap();
        assert_eq!(before.reachable_fraction, 1.0);

        // pick an absent edge, if any remain
        use rand::seq::SliceRandom;
        let absent: Vec<(NodeId, NodeId)> = (0..n as NodeId)
            .flat_map(|u| (0..n as NodeId).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !edges.contains(&(u, v)))
            .collect();
        let Some(&(u, v)) = absent.choose(&mut rng) else { continue };
        let mut more = edges.clone();
        more.insert((u, v));
        let g2 = DirectedGraph::from_edges(n, more.into_iter()).unwrap();
        let after = average_path_length::<f64>(&g2, PathLengthMode::Exact).unwrap();
        assert!(
            after.avg <= before.avg,
            "adding {u}->{v} lengthened paths: {} -> {}",
            before.avg,
            after.avg
        );
        assert_eq!(after.reachable_fraction, 1.0);
    }
}

#[test]
fn graph_metrics_bundle_agrees_with_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = common::random_digraph(&mut rng, 40, 5);
    let m = graph_metrics::<f64>(&g, PathLengthMode::Exact).unwrap();
    let p = average_path_length::<f64>(&g, PathLengthMode::Exact).unwrap();
    let t: f64 = transitivity(&g);
    let h = degree_histograms(&g);
    assert_eq!(m.avg_path_length, p.avg);
    assert_eq!(m.reachable_pair_fraction, p.reachable_fraction);
    assert_eq!(m.transitivity, t);
    assert_eq!(m.out_degree_histogram, h.out_degree);
    assert_eq!(m.total_degree_histogram, h.total_degree);
    assert!(m.exact);
}

#[test]
fn transitivity_bounds_hold_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    for _ in 0..30 {
        let n = rng.gen_range(2..=40);
        let g = common::random_digraph(&mut rng, n, 7);
        let t: f64 = transitivity(&g);
        assert!((0.0..=1.0).contains(&t));
    }
}
