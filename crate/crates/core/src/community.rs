//! Communities and ranked result lists.

use std::cmp::Ordering;

use crate::aggregation::{rank_value, Aggregation};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A connected vertex set with minimum internal degree `k`, together with its
/// influence value under one aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct Community {
    /// Dense ids, ascending.
    pub members: Vec<usize>,
    pub value: f64,
    pub k: usize,
    pub kind: Aggregation,
}

impl Community {
    /// Builds a community, computing its value from scratch. Fails when the
    /// set has no rankable value.
    pub fn new(graph: &WeightedGraph, mut members: Vec<usize>, k: usize, kind: Aggregation) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let missing = if members.is_empty() {
            Error::EmptySet
        } else {
            Error::Singularity
        };
        let value = rank_value(kind, graph, &members).ok_or(missing)?;
        Ok(Self {
            members,
            value,
            k,
            kind,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn intersects(&self, other: &Community) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// Original labels of the members, in member order.
    pub fn labels(&self, graph: &WeightedGraph) -> Vec<u64> {
        self.members.iter().map(|&v| graph.label(v)).collect()
    }
}

/// Ranking order: higher value first, then the lexicographically smaller
/// ascending member list (which also puts a prefix before its extensions).
pub fn rank_order(a_value: f64, a_members: &[usize], b_value: f64, b_members: &[usize]) -> Ordering {
    b_value.total_cmp(&a_value).then_with(|| a_members.cmp(b_members))
}

pub(crate) fn cmp_communities(a: &Community, b: &Community) -> Ordering {
    rank_order(a.value, &a.members, b.value, &b.members)
}

/// Top-r communities, best first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultList {
    entries: Vec<Community>,
}

impl ResultList {
    /// Sorts by the ranking order, drops repeated member sets and keeps the
    /// first `r`.
    pub fn from_candidates(mut candidates: Vec<Community>, r: usize) -> Self {
        candidates.sort_by(cmp_communities);
        candidates.dedup_by(|a, b| a.members == b.members);
        candidates.truncate(r);
        Self { entries: candidates }
    }

    /// Keeps the given order, e.g. when reading back a stored ranking.
    pub fn from_ranked(entries: Vec<Community>) -> Self {
        Self { entries }
    }

    /// Wraps entries that are already ranked.
    pub(crate) fn from_sorted(entries: Vec<Community>) -> Self {
        debug_assert!(entries.windows(2).all(|w| cmp_communities(&w[0], &w[1]) == Ordering::Less));
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, rank: usize) -> Option<&Community> {
        self.entries.get(rank)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Community> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Community] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Community> {
        self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|c| c.value).collect()
    }

    pub fn last_value(&self) -> Option<f64> {
        self.entries.last().map(|c| c.value)
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, a)| self.entries[i + 1..].iter().all(|b| !a.intersects(b)))
    }
}

impl<'a> IntoIterator for &'a ResultList {
    type Item = &'a Community;
    type IntoIter = std::slice::Iter<'a, Community>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
