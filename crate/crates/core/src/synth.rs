//! Random graphs with a power-law degree distribution.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Parameters of [`generate_powerlaw`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawSpec {
    pub n: usize,
    /// Degree exponent, strictly between 2 and 3.
    pub gamma: f64,
    /// Expected degree of the lowest-degree vertices.
    pub min_degree: usize,
    pub seed: u64,
}

impl PowerLawSpec {
    pub fn new(n: usize, gamma: f64, seed: u64) -> Self {
        Self {
            n,
            gamma,
            min_degree: 1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 2.0 && self.gamma < 3.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (2, 3), got {}",
                self.gamma
            )));
        }
        if self.min_degree == 0 {
            return Err(Error::InvalidParameter("min_degree must be at least 1".into()));
        }
        Ok(())
    }

    /// Expected degree of each vertex, non-increasing in the id.
    pub fn expected_degrees(&self) -> Vec<f64> {
        let exponent = 1.0 / (self.gamma - 1.0);
        let n = self.n as f64;
        let mut degrees: Vec<f64> = (0..self.n)
            .map(|i| self.min_degree as f64 * (n / (i + 1) as f64).powf(exponent))
            .collect();
        let cap = degrees.iter().sum::<f64>().sqrt();
        for d in &mut degrees {
            *d = d.min(cap);
        }
        degrees
    }
}

/// Chung-Lu graph whose expected degrees follow `P(d) ~ d^-gamma`, built in
/// expected linear time by geometric skipping. Labels are `0..n`; weights are
/// uniform on [0, 1) drawn after the edges from the same seeded stream.
pub fn generate_powerlaw(spec: &PowerLawSpec) -> Result<WeightedGraph> {
    spec.validate()?;
    let n = spec.n;
    let degrees = spec.expected_degrees();
    let total: f64 = degrees.iter().sum();
    let mut rng = StdRng::seed_from_u64(spec.seed);
    let mut edges = Vec::new();

    for u in 0..n.saturating_sub(1) {
        let mut v = u + 1;
        let mut p = (degrees[u] * degrees[v] / total).min(1.0);
        while v < n && p > 0.0 {
            if p < 1.0 {
                let x: f64 = rng.random();
                let skip = ((1.0 - x).ln() / (1.0 - p).ln()).floor();
                if skip >= (n - v) as f64 {
                    break;
                }
                v += skip as usize;
            }
            if v >= n {
                break;
            }
            let q = (degrees[u] * degrees[v] / total).min(1.0);
            let x: f64 = rng.random();
            if x < q / p {
                edges.push((u, v));
            }
            p = q;
            v += 1;
        }
    }

    let weights = (0..n).map(|_| rng.random::<f64>()).collect();
    WeightedGraph::from_parts((0..n as u64).collect(), &edges, weights)
}

/// Upper estimates `(vertices, edges)` of the k-core of a power-law graph
/// with `n` vertices and exponent `gamma`.
pub fn estimate_core(n: usize, gamma: f64, k: usize) -> (f64, f64) {
    let n = n as f64;
    let k = k as f64;
    let vertices = n / ((gamma - 1.0) * k.powf(gamma - 1.0));
    let edges = n / (2.0 * (gamma - 2.0) * k.powf(gamma - 2.0));
    (vertices, edges)
}
