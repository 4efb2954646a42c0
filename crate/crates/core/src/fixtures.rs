//! Small hand-built graphs shared by unit tests, integration tests and the
//! command line examples.

use crate::graph::WeightedGraph;

/// Labels of the eleven-vertex example network, in dense-id order.
pub const EXAMPLE_LABELS: [u64; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

/// Weights of vertices 1..=11.
pub const EXAMPLE_WEIGHTS: [f64; 11] = [33.0, 35.0, 5.0, 4.0, 6.0, 2.0, 6.0, 21.0, 16.0, 17.0, 58.0];

/// Edges of the example network, by label.
pub const EXAMPLE_EDGES: [(u64, u64); 16] = [
    (1, 2),
    (1, 4),
    (2, 4),
    (4, 5),
    (5, 6),
    (5, 7),
    (5, 8),
    (6, 7),
    (6, 9),
    (6, 10),
    (6, 11),
    (7, 8),
    (7, 11),
    (3, 9),
    (3, 10),
    (9, 10),
];

/// Eleven-vertex network whose communities differ sharply between
/// aggregation functions: the whole graph is a connected 2-core of total
/// weight 203, the densest-by-average triangles are {1,2,4} and {6,7,11}, and
/// the heaviest-minimum triangles are {5,7,8} and {3,9,10}.
///
/// Vertex `i` has label `i` and dense id `i - 1`.
pub fn example_network() -> WeightedGraph {
    let edges: Vec<(usize, usize)> = EXAMPLE_EDGES
        .iter()
        .map(|&(u, v)| (u as usize - 1, v as usize - 1))
        .collect();
    WeightedGraph::from_parts(EXAMPLE_LABELS.to_vec(), &edges, EXAMPLE_WEIGHTS.to_vec())
        .expect("example network is well formed")
}

/// Dense ids for the given example-network labels, ascending.
pub fn example_ids(labels: &[u64]) -> Vec<usize> {
    let mut ids: Vec<usize> = labels.iter().map(|&l| l as usize - 1).collect();
    ids.sort_unstable();
    ids
}
