#![allow(dead_code)]

use infcomm_core::WeightedGraph;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Erdos-Renyi graph with integer weights in `0..=max_weight`.
pub fn random_graph(seed: u64, n: usize, p: f64, max_weight: u32) -> WeightedGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let weights = (0..n).map(|_| rng.random_range(0..=max_weight) as f64).collect();
    WeightedGraph::from_parts((0..n as u64).collect(), &edges, weights).unwrap()
}

/// Strategy over small random graphs.
pub fn small_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (any::<u64>(), 1..=max_n, 0.15f64..0.7).prop_map(|(seed, n, p)| random_graph(seed, n, p, 9))
}
