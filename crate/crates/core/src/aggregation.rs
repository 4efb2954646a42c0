//! Aggregation functions mapping a vertex set to an influence value.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Default surplus per vertex for [`Aggregation::SumSurplus`].
pub const DEFAULT_ALPHA: f64 = 1.0;
/// Default penalty per vertex for [`Aggregation::WeightDensity`].
pub const DEFAULT_BETA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aggregation {
    Min,
    Max,
    Sum,
    /// `w(H) + alpha * |H|`
    SumSurplus { alpha: f64 },
    Avg,
    /// `w(H) - beta * |H|`
    WeightDensity { beta: f64 },
    /// `w(H) / (w(H) - w(V \ H))`
    BalancedDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hardness {
    Polynomial,
    NpHard,
}

/// Structural properties of an aggregation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionTraits {
    /// The value always equals the weight of a single member.
    pub node_domination: bool,
    /// Supersets never have a smaller value.
    pub size_proportional: bool,
    pub monotonic: bool,
    pub submodular: bool,
    /// Complexity of the unconstrained top-r search.
    pub hardness: Hardness,
}

/// Which local-search procedure handles a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    /// Start from the full neighbourhood and shrink.
    Shrink,
    /// Grow one vertex at a time.
    Grow,
}

impl Aggregation {
    /// Every kind, using the default `alpha` and `beta`.
    pub const ALL: [Aggregation; 7] = [
        Aggregation::Min,
        Aggregation::Max,
        Aggregation::Sum,
        Aggregation::SumSurplus { alpha: DEFAULT_ALPHA },
        Aggregation::Avg,
        Aggregation::WeightDensity { beta: DEFAULT_BETA },
        Aggregation::BalancedDensity,
    ];

    /// Parses the command-line name of a kind.
    pub fn from_name(name: &str, alpha: f64, beta: f64) -> Result<Self> {
        match name {
            "min" => Ok(Self::Min),
            "max" => Ok(Self::Max),
            "sum" => Ok(Self::Sum),
            "sum-surplus" => Ok(Self::SumSurplus { alpha }),
            "avg" => Ok(Self::Avg),
            "weight-density" => Ok(Self::WeightDensity { beta }),
            "balanced-density" => Ok(Self::BalancedDensity),
            other => Err(Error::InvalidParameter(format!("unknown aggregation {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Min => "min",
            Self::Max => "max",
            Self::Sum => "sum",
            Self::SumSurplus { .. } => "sum-surplus",
            Self::Avg => "avg",
            Self::WeightDensity { .. } => "weight-density",
            Self::BalancedDensity => "balanced-density",
        }
    }

    pub fn traits(&self) -> FunctionTraits {
        use Hardness::*;
        let t = |node_domination, size_proportional, monotonic, submodular, hardness| FunctionTraits {
            node_domination,
            size_proportional,
            monotonic,
            submodular,
            hardness,
        };
        match *self {
            Self::Min => t(true, false, true, false, Polynomial),
            Self::Max => t(true, false, true, true, Polynomial),
            Self::Sum => t(false, true, true, true, Polynomial),
            Self::SumSurplus { alpha } if alpha >= 0.0 => t(false, true, true, true, Polynomial),
            // A negative surplus can shrink the value when vertices are added.
            Self::SumSurplus { .. } => t(false, false, false, true, NpHard),
            Self::Avg => t(false, false, false, false, NpHard),
            Self::WeightDensity { .. } => t(false, false, true, false, NpHard),
            Self::BalancedDensity => t(false, false, false, false, NpHard),
        }
    }

    pub fn strategy(&self) -> StrategyKind {
        match self {
            Self::Sum | Self::SumSurplus { .. } | Self::WeightDensity { .. } => StrategyKind::Shrink,
            Self::Avg | Self::BalancedDensity | Self::Min | Self::Max => StrategyKind::Grow,
        }
    }

    /// Per-vertex contribution for the additive kinds; `None` otherwise.
    pub(crate) fn increment(&self, weight: f64) -> Option<f64> {
        match *self {
            Self::Sum => Some(weight),
            Self::SumSurplus { alpha } => Some(weight + alpha),
            Self::WeightDensity { beta } => Some(weight - beta),
            _ => None,
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SumSurplus { alpha } => write!(f, "sum-surplus(alpha={alpha})"),
            Self::WeightDensity { beta } => write!(f, "weight-density(beta={beta})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Influence value of `members` under `kind`.
///
/// Summation runs in the order given, so callers that need bit-identical
/// values pass members in ascending id order.
pub fn evaluate(kind: Aggregation, graph: &WeightedGraph, members: &[usize]) -> Result<f64> {
    if members.is_empty() {
        return Err(Error::EmptySet);
    }
    let weights = members.iter().map(|&v| graph.weight(v));
    let size = members.len() as f64;
    Ok(match kind {
        Aggregation::Min => weights.fold(f64::INFINITY, f64::min),
        Aggregation::Max => weights.fold(f64::NEG_INFINITY, f64::max),
        Aggregation::Sum => weights.sum(),
        Aggregation::SumSurplus { alpha } => weights.sum::<f64>() + alpha * size,
        Aggregation::Avg => weights.sum::<f64>() / size,
        Aggregation::WeightDensity { beta } => weights.sum::<f64>() - beta * size,
        Aggregation::BalancedDensity => {
            let inside: f64 = weights.sum();
            let outside = graph.total_weight() - inside;
            let denominator = inside - outside;
            if denominator == 0.0 {
                return Err(Error::Singularity);
            }
            inside / denominator
        }
    })
}

/// Value used for ranking: `None` when the set cannot be ranked (empty, or a
/// balanced density with a non-positive denominator).
pub fn rank_value(kind: Aggregation, graph: &WeightedGraph, members: &[usize]) -> Option<f64> {
    let value = evaluate(kind, graph, members).ok()?;
    if kind == Aggregation::BalancedDensity {
        let inside: f64 = members.iter().map(|&v| graph.weight(v)).sum();
        if inside - (graph.total_weight() - inside) <= 0.0 {
            return None;
        }
    }
    Some(value)
}

/// `f(H)` if every member has at least `k` neighbours inside `H`, else 0.
/// Connectivity is not required.
pub fn objective(kind: Aggregation, graph: &WeightedGraph, members: &[usize], k: usize) -> f64 {
    if members.is_empty() {
        return 0.0;
    }
    let mut inside = vec![false; graph.vertex_count()];
    for &v in members {
        inside[v] = true;
    }
    let cohesive = members
        .iter()
        .all(|&v| graph.neighbors(v).iter().filter(|&&u| inside[u]).count() >= k);
    if !cohesive {
        return 0.0;
    }
    evaluate(kind, graph, members).unwrap_or(0.0)
}

/// Running sum and count for the kinds whose value depends only on
/// `w(H)` and `|H|`. Min and Max are recomputed from scratch instead.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SumCount {
    pub sum: f64,
    pub count: usize,
}

impl SumCount {
    pub fn of(graph: &WeightedGraph, members: &[usize]) -> Self {
        Self {
            sum: members.iter().map(|&v| graph.weight(v)).sum(),
            count: members.len(),
        }
    }

    pub fn push(&mut self, weight: f64) {
        self.sum += weight;
        self.count += 1;
    }

    pub fn pop(&mut self, weight: f64) {
        self.sum -= weight;
        self.count -= 1;
    }

    /// Value under `kind`, or `None` for Min/Max, empty sets and invalid
    /// balanced densities. `total` is `w(V)`.
    pub fn value(&self, kind: Aggregation, total: f64) -> Option<f64> {
        if self.count == 0 {
            return None;
        }
        let size = self.count as f64;
        match kind {
            Aggregation::Sum => Some(self.sum),
            Aggregation::SumSurplus { alpha } => Some(self.sum + alpha * size),
            Aggregation::Avg => Some(self.sum / size),
            Aggregation::WeightDensity { beta } => Some(self.sum - beta * size),
            Aggregation::BalancedDensity => {
                let denominator = self.sum - (total - self.sum);
                (denominator > 0.0).then(|| self.sum / denominator)
            }
            Aggregation::Min | Aggregation::Max => None,
        }
    }
}
