//! Candidate bookkeeping shared by the unconstrained searches.

use std::collections::HashSet;

use crate::aggregation::{rank_value, Aggregation};
use crate::community::{rank_order, Community, ResultList};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::kcore::CoreScratch;

#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub members: Vec<usize>,
    pub value: f64,
    /// No strict superset that is a connected k-core has the same value.
    pub maximal: bool,
}

impl Candidate {
    pub fn into_community(self, k: usize, kind: Aggregation) -> Community {
        Community {
            members: self.members,
            value: self.value,
            k,
            kind,
        }
    }
}

pub(crate) fn require_size_proportional(kind: Aggregation) -> Result<()> {
    if kind.traits().size_proportional {
        Ok(())
    } else {
        Err(Error::UnsupportedFunction {
            kind: kind.to_string(),
            reason: "exact pruning needs a size-proportional function; use the size-constrained local search",
        })
    }
}

/// Evaluation and maximality checks for one size-proportional search.
pub(crate) struct SearchContext<'g> {
    pub graph: &'g WeightedGraph,
    pub k: usize,
    pub kind: Aggregation,
    pub scratch: CoreScratch,
    /// Vertices whose addition leaves the value unchanged.
    neutral: Vec<usize>,
}

impl<'g> SearchContext<'g> {
    pub fn new(graph: &'g WeightedGraph, k: usize, kind: Aggregation) -> Self {
        let neutral = (0..graph.vertex_count())
            .filter(|&v| kind.increment(graph.weight(v)) == Some(0.0))
            .collect();
        Self {
            graph,
            k,
            kind,
            scratch: CoreScratch::new(graph.vertex_count()),
            neutral,
        }
    }

    /// Value of `members` minus `v`, before any re-peeling.
    pub fn value_without(&self, value: f64, v: usize) -> f64 {
        value - self.kind.increment(self.graph.weight(v)).unwrap_or(0.0)
    }

    /// `members` must be a sorted connected k-core.
    pub fn candidate(&mut self, members: Vec<usize>) -> Option<Candidate> {
        let value = rank_value(self.kind, self.graph, &members)?;
        let maximal = self.is_maximal(&members);
        Some(Candidate {
            members,
            value,
            maximal,
        })
    }

    /// For additive functions an equal-valued superset can only add neutral
    /// vertices, so it suffices to grow `members` by every neutral vertex,
    /// re-peel, and see whether the component holding `members` grew.
    fn is_maximal(&mut self, members: &[usize]) -> bool {
        if self.neutral.is_empty() {
            return true;
        }
        let mut extended: Vec<usize> = members.iter().chain(&self.neutral).copied().collect();
        extended.sort_unstable();
        extended.dedup();
        if extended.len() == members.len() {
            return true;
        }
        let anchor = members[0];
        self.scratch
            .core_components(self.graph, &extended, None, self.k)
            .into_iter()
            .find(|c| c.binary_search(&anchor).is_ok())
            .is_none_or(|c| c.len() == members.len())
    }
}

/// Ranked candidate list that keeps the best `r` maximal candidates, every
/// candidate tied with the r-th of those, and any non-maximal candidate that
/// ranks above the cut.
pub(crate) struct Pool {
    r: usize,
    entries: Vec<Candidate>,
    present: HashSet<Vec<usize>>,
}

impl Pool {
    pub fn new(r: usize) -> Self {
        Self {
            r,
            entries: Vec::new(),
            present: HashSet::new(),
        }
    }

    pub fn insert(&mut self, candidate: Candidate) -> bool {
        if self.present.insert(candidate.members.clone()) {
            self.entries.push(candidate);
            true
        } else {
            false
        }
    }

    pub fn entries(&self) -> &[Candidate] {
        &self.entries
    }

    fn sort(&mut self) {
        self.entries
            .sort_by(|a, b| rank_order(a.value, &a.members, b.value, &b.members));
    }

    /// Value of the r-th best maximal candidate, or -inf when fewer exist.
    pub fn rth_value(&self) -> f64 {
        self.entries
            .iter()
            .filter(|c| c.maximal)
            .nth(self.r - 1)
            .map_or(f64::NEG_INFINITY, |c| c.value)
    }

    pub fn truncate(&mut self) {
        self.sort();
        let cut = self.rth_value();
        if cut == f64::NEG_INFINITY {
            return;
        }
        let keep = self.entries.partition_point(|c| c.value >= cut);
        for dropped in self.entries.drain(keep..) {
            self.present.remove(&dropped.members);
        }
    }

    /// Removes and returns the best candidate.
    pub fn pop_best(&mut self) -> Option<Candidate> {
        self.sort();
        if self.entries.is_empty() {
            return None;
        }
        let best = self.entries.remove(0);
        self.present.remove(&best.members);
        Some(best)
    }

    pub fn into_result(mut self, k: usize, kind: Aggregation) -> ResultList {
        self.sort();
        let entries = self
            .entries
            .into_iter()
            .filter(|c| c.maximal)
            .take(self.r)
            .map(|c| c.into_community(k, kind))
            .collect();
        ResultList::from_sorted(entries)
    }
}
