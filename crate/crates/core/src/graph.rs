//! Vertex-weighted undirected graphs and the SNAP-style text formats used to
//! load them.
//!
//! Vertices are addressed by dense ids `0..n`. External labels (the integers
//! found in edge-list files) are remapped in first-appearance order and kept
//! for output.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;

use log::debug;

use crate::error::{Error, Result};

/// Immutable undirected graph with non-negative vertex weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<usize>>,
    weights: Vec<f64>,
    labels: Vec<u64>,
    index: HashMap<u64, usize>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph from explicit labels, dense-id edges and weights.
    ///
    /// Self-loops and repeated edges are dropped. Fails if an edge endpoint is
    /// out of range, a label repeats, or a weight is negative or non-finite.
    pub fn from_parts(labels: Vec<u64>, edges: &[(usize, usize)], weights: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if weights.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} weights supplied for {n} vertices",
                weights.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (id, &label) in labels.iter().enumerate() {
            if index.insert(label, id).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate label {label}")));
            }
        }
        for (&label, &weight) in labels.iter().zip(&weights) {
            check_weight(label, weight)?;
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Self {
            adjacency,
            weights,
            labels,
            index,
            edge_count: edge_count / 2,
        })
    }

    /// Graph on vertices `0..n` labelled by their own ids, all weights zero.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_parts((0..n as u64).collect(), edges, vec![0.0; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Sorted neighbour ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Sum of all vertex weights.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn id_of(&self, label: u64) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Iterates every undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Returns a copy carrying `weights` instead of the current ones.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} weights supplied for {} vertices",
                weights.len(),
                self.vertex_count()
            )));
        }
        for (&label, &weight) in self.labels.iter().zip(&weights) {
            check_weight(label, weight)?;
        }
        Ok(Self {
            weights,
            ..self.clone()
        })
    }
}

fn check_weight(label: u64, weight: f64) -> Result<()> {
    if weight.is_finite() && weight >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidWeight { label, weight })
    }
}

/// Parses a whitespace-separated edge list, one `u v` pair per line.
///
/// Lines starting with `#` and blank lines are skipped. Self-loops and
/// duplicate edges (including the reverse direction) are dropped. All weights
/// start at zero.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<WeightedGraph> {
    let mut labels = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut self_loops = 0usize;

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two vertex labels, found {trimmed:?}"),
            });
        };
        let mut intern = |token: &str| -> Result<usize> {
            let label: u64 = token.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex label {token:?}"),
            })?;
            Ok(*index.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            }))
        };
        let u = intern(a)?;
        let v = intern(b)?;
        if u == v {
            self_loops += 1;
        } else {
            edges.push((u, v));
        }
    }

    let n = labels.len();
    let graph = WeightedGraph::from_parts(labels, &edges, vec![0.0; n])?;
    let duplicates = edges.len() - graph.edge_count();
    if self_loops > 0 || duplicates > 0 {
        debug!("edge list: dropped {self_loops} self-loops and {duplicates} repeated edges");
    }
    Ok(graph)
}

/// Parses `label weight` lines and returns `graph` with those weights.
/// Vertices not mentioned keep weight zero.
pub fn load_weights<R: BufRead>(graph: &WeightedGraph, reader: R) -> Result<WeightedGraph> {
    let mut weights = vec![0.0; graph.vertex_count()];
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `label weight`, found {trimmed:?}"),
            });
        };
        let label: u64 = a.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid vertex label {a:?}"),
        })?;
        let weight: f64 = b.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid weight {b:?}"),
        })?;
        let id = graph.id_of(label).ok_or(Error::UnknownLabel(label))?;
        check_weight(label, weight)?;
        weights[id] = weight;
    }
    graph.with_weights(weights)
}

/// Renders the edge list format read by [`parse_edge_list`].
pub fn format_edge_list(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{} {}", graph.label(u), graph.label(v));
    }
    out
}

/// Renders `label weight` lines for every vertex accepted by `keep`.
///
/// Weights use the shortest representation that parses back to the same
/// `f64`.
pub fn format_weights(graph: &WeightedGraph, weights: &[f64], keep: impl Fn(usize) -> bool) -> String {
    let mut out = String::new();
    for (v, w) in weights.iter().enumerate() {
        if keep(v) {
            let _ = writeln!(out, "{} {}", graph.label(v), w);
        }
    }
    out
}
