//! Top-r k-influential community search without a size cap, for
//! size-proportional aggregations (sum, and sum-surplus with a non-negative
//! surplus).
//!
//! Both searches start from the connected components of the maximal k-core
//! and derive smaller communities by deleting one vertex at a time and
//! re-peeling. Because removing vertices never raises the value of a
//! size-proportional function, anything that falls out of the current top-r
//! can be discarded together with all of its descendants.

use std::collections::HashSet;

use crate::aggregation::Aggregation;
use crate::community::ResultList;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::kcore::{connected_components, k_core};
use crate::pool::{require_size_proportional, Candidate, Pool, SearchContext};

/// Default approximation slack for [`tic_improved`].
pub const DEFAULT_EPSILON: f64 = 0.1;

fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok(())
}

fn initial_pool(ctx: &mut SearchContext<'_>, r: usize) -> Pool {
    let mut pool = Pool::new(r);
    for component in connected_components(&k_core(ctx.graph, ctx.k)) {
        if let Some(candidate) = ctx.candidate(component) {
            pool.insert(candidate);
        }
    }
    pool.truncate();
    pool
}

/// Exact top-r search: visits vertices in ascending id order and deletes each
/// one from every tracked community that contains it.
pub fn sum_naive(graph: &WeightedGraph, k: usize, r: usize, kind: Aggregation) -> Result<ResultList> {
    require_size_proportional(kind)?;
    check_r(r)?;
    let mut ctx = SearchContext::new(graph, k, kind);
    let mut pool = initial_pool(&mut ctx, r);

    for v in 0..graph.vertex_count() {
        let hits: Vec<Vec<usize>> = pool
            .entries()
            .iter()
            .filter(|c| c.members.binary_search(&v).is_ok())
            .map(|c| c.members.clone())
            .collect();
        if hits.is_empty() {
            continue;
        }
        for members in hits {
            for component in ctx.scratch.core_components(graph, &members, Some(v), k) {
                if let Some(candidate) = ctx.candidate(component) {
                    pool.insert(candidate);
                }
            }
        }
        pool.truncate();
    }
    Ok(pool.into_result(k, kind))
}

/// Approximate top-r search with a lower bound `(1 - epsilon) * f(L_max)`.
///
/// The best open candidate is expanded repeatedly; every derived community
/// whose value reaches the bound is admitted to the result set straight away.
/// The expanded candidate is itself admitted, so with `epsilon = 0` the
/// result equals the exact top-r. Stops early (with fewer than `r` results)
/// if the candidate list runs dry.
pub fn tic_improved(
    graph: &WeightedGraph,
    k: usize,
    r: usize,
    epsilon: f64,
    kind: Aggregation,
) -> Result<ResultList> {
    require_size_proportional(kind)?;
    check_r(r)?;
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    let mut ctx = SearchContext::new(graph, k, kind);
    let mut open = initial_pool(&mut ctx, r);
    let mut seen: HashSet<Vec<usize>> = open.entries().iter().map(|c| c.members.clone()).collect();

    let mut admitted: Vec<Candidate> = Vec::new();
    let mut in_result: HashSet<Vec<usize>> = HashSet::new();
    let mut admit = |c: &Candidate, admitted: &mut Vec<Candidate>| {
        if c.maximal && in_result.insert(c.members.clone()) {
            admitted.push(c.clone());
        }
    };

    if let Some(best) = open.entries().first() {
        let bound = best.value * (1.0 - epsilon);
        for c in open.entries() {
            if c.value >= bound {
                admit(c, &mut admitted);
            }
        }
    }

    while admitted.len() < r {
        let Some(best) = open.pop_best() else { break };
        let bound = best.value * (1.0 - epsilon);
        admit(&best, &mut admitted);

        for &v in &best.members {
            if ctx.value_without(best.value, v) <= open.rth_value() {
                continue;
            }
            for component in ctx.scratch.core_components(graph, &best.members, Some(v), k) {
                if seen.contains(&component) {
                    continue;
                }
                seen.insert(component.clone());
                let Some(candidate) = ctx.candidate(component) else { continue };
                if candidate.value >= bound {
                    admit(&candidate, &mut admitted);
                }
                open.insert(candidate);
            }
            open.truncate();
        }
    }

    let communities = admitted.into_iter().map(|c| c.into_community(k, kind)).collect();
    Ok(ResultList::from_candidates(communities, r))
}

/// Top-r pairwise-disjoint communities: the best connected components of the
/// maximal k-core.
pub fn non_overlapping_unconstrained(
    graph: &WeightedGraph,
    k: usize,
    r: usize,
    kind: Aggregation,
) -> Result<ResultList> {
    require_size_proportional(kind)?;
    check_r(r)?;
    let mut ctx = SearchContext::new(graph, k, kind);
    let communities = connected_components(&k_core(graph, k))
        .into_iter()
        .filter_map(|c| ctx.candidate(c))
        .map(|c| c.into_community(k, kind))
        .collect();
    Ok(ResultList::from_candidates(communities, r))
}
