//! PageRank scores as vertex weights.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Power iteration with uniform teleportation. Isolated vertices spread their
/// mass uniformly. Stops once the L1 change between rounds drops below `tol`
/// or after `max_iter` rounds; the scores sum to 1.
pub fn pagerank(graph: &WeightedGraph, damping: f64, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidParameter(format!("damping must lie in (0, 1), got {damping}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let n = graph.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    for iteration in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&v| graph.degree(v) == 0).map(|v| rank[v]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        next.fill(base);
        for (v, &score) in rank.iter().enumerate() {
            let degree = graph.degree(v);
            if degree > 0 {
                let share = damping * score / degree as f64;
                for &u in graph.neighbors(v) {
                    next[u] += share;
                }
            }
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < tol {
            log::debug!("pagerank converged after {} rounds", iteration + 1);
            break;
        }
    }
    Ok(rank)
}
