//! Brute-force ground truth and evaluation helpers.
//!
//! Deliberately shares no search code with the algorithms it checks: subsets
//! are swept as plain bitmasks and every property is re-derived from the
//! adjacency lists.

use std::collections::HashMap;
use std::fmt;

use crate::aggregation::{evaluate, rank_value, Aggregation};
use crate::community::{Community, ResultList};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Largest graph the brute force accepts.
pub const ORACLE_VERTEX_LIMIT: usize = 20;

/// Exact top-r by enumerating every vertex subset of the whole graph.
pub fn brute_force_topr(
    graph: &WeightedGraph,
    k: usize,
    r: usize,
    s: Option<usize>,
    kind: Aggregation,
    non_overlapping: bool,
) -> Result<ResultList> {
    let n = graph.vertex_count();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            n,
            cap: ORACLE_VERTEX_LIMIT,
        });
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let cap = s.unwrap_or(n);
    let mut feasible: Vec<(u32, f64)> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < k + 1 || size > cap {
            continue;
        }
        let members = members_of(mask);
        if !degrees_at_least(graph, &members, mask, k) || !connected(graph, &members, mask) {
            continue;
        }
        if let Some(value) = rank_value(kind, graph, &members) {
            feasible.push((mask, value));
        }
    }

    let mut by_value: HashMap<u64, Vec<u32>> = HashMap::new();
    for &(mask, value) in &feasible {
        by_value.entry((value + 0.0).to_bits()).or_default().push(mask);
    }
    let candidates: Vec<Community> = feasible
        .iter()
        .filter(|&&(mask, value)| {
            by_value[&(value + 0.0).to_bits()]
                .iter()
                .all(|&other| other == mask || other & mask != mask)
        })
        .map(|&(mask, value)| Community {
            members: members_of(mask),
            value,
            k,
            kind,
        })
        .collect();

    let ranked = ResultList::from_candidates(candidates, usize::MAX).into_entries();
    if !non_overlapping {
        return Ok(ResultList::from_candidates(ranked, r));
    }
    let mut picked: Vec<Community> = Vec::new();
    let mut used = 0u32;
    for c in ranked {
        let mask = c.members.iter().fold(0u32, |m, &v| m | (1 << v));
        if mask & used == 0 {
            used |= mask;
            picked.push(c);
            if picked.len() == r {
                break;
            }
        }
    }
    Ok(ResultList::from_candidates(picked, r))
}

fn members_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

fn degrees_at_least(graph: &WeightedGraph, members: &[usize], mask: u32, k: usize) -> bool {
    members
        .iter()
        .all(|&v| graph.neighbors(v).iter().filter(|&&u| mask & (1 << u) != 0).count() >= k)
}

fn connected(graph: &WeightedGraph, members: &[usize], mask: u32) -> bool {
    let mut reached = 1u32 << members[0];
    let mut queue = vec![members[0]];
    while let Some(v) = queue.pop() {
        for &u in graph.neighbors(v) {
            let bit = 1u32 << u;
            if mask & bit != 0 && reached & bit == 0 {
                reached |= bit;
                queue.push(u);
            }
        }
    }
    reached == mask
}

/// First failed requirement of [`verify_community`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Empty,
    /// A member id is not a vertex of the graph.
    UnknownMember(usize),
    Connected,
    /// Some member has fewer than `k` neighbours inside the community.
    Cohesive { vertex: usize, degree: usize },
    SizeExceeded { size: usize, cap: usize },
    ValueMismatch { claimed: f64, actual: Option<f64> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "empty community"),
            Self::UnknownMember(v) => write!(f, "member {v} is not a vertex"),
            Self::Connected => write!(f, "Connected: induced subgraph is disconnected"),
            Self::Cohesive { vertex, degree } => {
                write!(f, "Cohesive: vertex {vertex} has internal degree {degree}")
            }
            Self::SizeExceeded { size, cap } => write!(f, "size {size} exceeds cap {cap}"),
            Self::ValueMismatch { claimed, actual } => {
                write!(f, "value mismatch: claimed {claimed}, recomputed {actual:?}")
            }
        }
    }
}

/// Checks that `community` is a connected k-core within the size cap whose
/// stored value matches a fresh evaluation.
pub fn verify_community(
    graph: &WeightedGraph,
    community: &Community,
    k: usize,
    s: Option<usize>,
) -> std::result::Result<(), Violation> {
    let members = &community.members;
    if members.is_empty() {
        return Err(Violation::Empty);
    }
    if let Some(&v) = members.iter().find(|&&v| v >= graph.vertex_count()) {
        return Err(Violation::UnknownMember(v));
    }
    let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
    for &v in members {
        let degree = graph.neighbors(v).iter().filter(|u| inside.contains(u)).count();
        if degree < k {
            return Err(Violation::Cohesive { vertex: v, degree });
        }
    }
    let mut seen = std::collections::HashSet::from([members[0]]);
    let mut queue = std::collections::VecDeque::from([members[0]]);
    while let Some(v) = queue.pop_front() {
        for &u in graph.neighbors(v) {
            if inside.contains(&u) && seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    if seen.len() != inside.len() {
        return Err(Violation::Connected);
    }
    if let Some(cap) = s {
        if members.len() > cap {
            return Err(Violation::SizeExceeded {
                size: members.len(),
                cap,
            });
        }
    }
    let mut sorted = members.clone();
    sorted.sort_unstable();
    let actual = evaluate(community.kind, graph, &sorted).ok();
    if actual != Some(community.value) {
        return Err(Violation::ValueMismatch {
            claimed: community.value,
            actual,
        });
    }
    Ok(())
}

/// True when the approximate list's last value reaches `(1 - epsilon)` times
/// the exact value at the same rank.
pub fn check_approx_factor(approx: &ResultList, exact: &ResultList, epsilon: f64) -> Result<bool> {
    if exact.is_empty() {
        return Err(Error::EmptyReference);
    }
    if approx.is_empty() {
        return Ok(false);
    }
    let rank = approx.len().min(exact.len()) - 1;
    let found = approx.get(rank).expect("rank within approx").value;
    let wanted = exact.get(rank).expect("rank within exact").value;
    Ok(found >= (1.0 - epsilon) * wanted)
}

/// Normalized discounted cumulative gain of the first `r` values, using the
/// raw influence value as gain.
pub fn ndcg(result: &ResultList, ideal: &ResultList, r: usize) -> f64 {
    let dcg = |list: &ResultList| -> f64 {
        list.iter()
            .take(r)
            .enumerate()
            .map(|(i, c)| c.value / ((i + 2) as f64).log2())
            .sum()
    };
    let best = dcg(ideal);
    let got = dcg(result);
    if best == 0.0 {
        return if got == 0.0 { 1.0 } else { 0.0 };
    }
    got / best
}
