//! Size-constrained top-r search: exhaustive enumeration for small graphs and
//! the seed-based local search heuristic.

use std::collections::{HashMap, HashSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::aggregation::{rank_value, Aggregation, StrategyKind, SumCount};
use crate::community::{rank_order, Community, ResultList};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::kcore::{k_core, CoreScratch, SubgraphView};
use crate::unconstrained::DEFAULT_EPSILON;

/// Largest maximal k-core [`tic_exact`] enumerates without an override.
pub const EXACT_VERTEX_CAP: usize = 20;
/// Hard limit of the bitmask enumeration.
pub const EXACT_VERTEX_LIMIT: usize = 64;
/// Search-tree nodes explored when growing an accepted local-search community
/// to an equal-valued maximal superset.
pub const MAXIMALIZE_BUDGET: usize = 10_000;

/// Adjacency entries scanned by one maximalization, across all nodes.
pub const MAXIMALIZE_WORK: usize = 1_000_000;

/// Parameters shared by the size-constrained searches.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    pub k: usize,
    pub r: usize,
    /// Size cap; `None` means no cap.
    pub s: Option<usize>,
    pub epsilon: f64,
    /// Greedy (weight-sorted) or random (shuffled BFS) neighbour order.
    pub greedy: bool,
    pub non_overlapping: bool,
    pub rng_seed: u64,
}

impl SearchParams {
    pub fn new(k: usize, r: usize) -> Self {
        Self {
            k,
            r,
            s: None,
            epsilon: DEFAULT_EPSILON,
            greedy: true,
            non_overlapping: false,
            rng_seed: 0,
        }
    }

    pub fn with_size(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_greedy(mut self, greedy: bool) -> Self {
        self.greedy = greedy;
        self
    }

    pub fn with_non_overlapping(mut self, non_overlapping: bool) -> Self {
        self.non_overlapping = non_overlapping;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in [0, 1), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// Effective size cap on a graph with `n` vertices.
    pub fn size_cap(&self, n: usize) -> usize {
        self.s.map_or(n, |s| s.min(n))
    }
}

/// Enumeration limits for [`tic_exact`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Enumerate even when the maximal k-core exceeds [`EXACT_VERTEX_CAP`].
    pub allow_large: bool,
    pub threads: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            allow_large: false,
            threads: 1,
        }
    }
}

/// Exact size-constrained top-r by enumerating every vertex set of size
/// `k+1..=s` inside the maximal k-core.
pub fn tic_exact(
    graph: &WeightedGraph,
    params: &SearchParams,
    kind: Aggregation,
    options: ExactOptions,
) -> Result<ResultList> {
    params.validate()?;
    let k = params.k;
    let universe = k_core(graph, k).members();
    let cap = if options.allow_large {
        EXACT_VERTEX_LIMIT
    } else {
        EXACT_VERTEX_CAP
    };
    if universe.len() > cap {
        return Err(Error::TooLarge {
            n: universe.len(),
            cap,
        });
    }
    let s = params.size_cap(graph.vertex_count()).min(universe.len());
    if s < k + 1 {
        return Ok(ResultList::default());
    }

    let position: HashMap<usize, usize> = universe.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adjacency: Vec<u64> = universe
        .iter()
        .map(|&v| {
            graph
                .neighbors(v)
                .iter()
                .filter_map(|u| position.get(u))
                .fold(0u64, |mask, &i| mask | (1 << i))
        })
        .collect();

    let enumerate = || -> Vec<(u64, f64)> {
        let m = universe.len();
        (0..m)
            .into_par_iter()
            .flat_map_iter(|low| {
                let mut found = Vec::new();
                for size in (k + 1)..=s {
                    let rest = size - 1;
                    let above = m - low - 1;
                    if rest > above {
                        break;
                    }
                    for tail in Combinations::new(above, rest) {
                        let mask = (1u64 << low) | tail.checked_shl(low as u32 + 1).unwrap_or(0);
                        if is_connected_core_mask(&adjacency, mask, k) {
                            let members = unmask(&universe, mask);
                            if let Some(value) = rank_value(kind, graph, &members) {
                                found.push((mask, value));
                            }
                        }
                    }
                }
                found
            })
            .collect()
    };
    let feasible = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
        .install(enumerate);

    let candidates: Vec<Community> = maximal_only(feasible)
        .into_iter()
        .map(|(mask, value)| Community {
            members: unmask(&universe, mask),
            value,
            k,
            kind,
        })
        .collect();
    Ok(select(candidates, params.r, params.non_overlapping))
}

/// Keeps the sets with no equal-valued strict superset among `feasible`.
fn maximal_only(feasible: Vec<(u64, f64)>) -> Vec<(u64, f64)> {
    let mut groups: HashMap<u64, Vec<(u64, f64)>> = HashMap::new();
    for (mask, value) in feasible {
        // +0.0 and -0.0 compare equal.
        let key = if value == 0.0 { 0 } else { value.to_bits() };
        groups.entry(key).or_default().push((mask, value));
    }
    let mut result = Vec::new();
    for (_, mut group) in groups {
        group.sort_by_key(|&(mask, _)| std::cmp::Reverse(mask.count_ones()));
        let mut tops: Vec<u64> = Vec::new();
        for (mask, value) in group {
            if tops.iter().any(|&t| t & mask == mask) {
                continue;
            }
            tops.push(mask);
            result.push((mask, value));
        }
    }
    result
}

/// Ranks candidates; in non-overlapping mode walks them best first and skips
/// any that meet an earlier pick.
pub(crate) fn select(candidates: Vec<Community>, r: usize, non_overlapping: bool) -> ResultList {
    if !non_overlapping {
        return ResultList::from_candidates(candidates, r);
    }
    let ranked = ResultList::from_candidates(candidates, usize::MAX);
    let mut picked: Vec<Community> = Vec::new();
    for c in ranked.into_entries() {
        if picked.len() == r {
            break;
        }
        if picked.iter().all(|p| !p.intersects(&c)) {
            picked.push(c);
        }
    }
    ResultList::from_candidates(picked, r)
}

fn unmask(universe: &[usize], mut mask: u64) -> Vec<usize> {
    let mut members = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        members.push(universe[mask.trailing_zeros() as usize]);
        mask &= mask - 1;
    }
    members
}

fn is_connected_core_mask(adjacency: &[u64], mask: u64, k: usize) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        if ((adjacency[i] & mask).count_ones() as usize) < k {
            return false;
        }
        rest &= rest - 1;
    }
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let mut grown = reached;
        let mut frontier = reached;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            grown |= adjacency[i] & mask;
            frontier &= frontier - 1;
        }
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

/// All `size`-bit subsets of the low `bits` bits, in increasing order.
struct Combinations {
    next: Option<u64>,
    bits: usize,
}

impl Combinations {
    fn new(bits: usize, size: usize) -> Self {
        let next = if size > bits {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some(u64::MAX >> (64 - size))
        };
        Self { next, bits }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            // Gosper's hack.
            let c = current & current.wrapping_neg();
            let r = current.wrapping_add(c);
            let following = (((r ^ current) >> 2) / c) | r;
            (r != 0 && following.checked_shr(self.bits as u32).unwrap_or(0) == 0).then_some(following)
        };
        Some(current)
    }
}

/// Up to `s` vertices nearest to `seed`: breadth-first by hop distance,
/// ascending id within a level.
pub fn s_nearest(graph: &WeightedGraph, seed: usize, s: usize) -> Vec<usize> {
    let levels = hop_levels(graph, seed, s, |_| true);
    levels.into_iter().flatten().collect()
}

/// BFS levels from `seed` over vertices accepted by `alive`, holding `s`
/// vertices in total at most.
fn hop_levels(graph: &WeightedGraph, seed: usize, s: usize, alive: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    if s == 0 {
        return Vec::new();
    }
    let mut visited = std::collections::HashSet::from([seed]);
    let mut levels = vec![vec![seed]];
    let mut total = 1;
    while total < s {
        let mut next: Vec<usize> = Vec::new();
        for &v in levels.last().expect("at least the seed level") {
            for &u in graph.neighbors(v) {
                if alive(u) && visited.insert(u) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        next.truncate(s - total);
        total += next.len();
        levels.push(next);
    }
    levels
}

/// Incrementally maintained value of a growing or shrinking vertex list.
struct Running {
    kind: Aggregation,
    total: f64,
    sums: SumCount,
    extreme: Vec<f64>,
}

impl Running {
    fn new(kind: Aggregation, graph: &WeightedGraph) -> Self {
        Self {
            kind,
            total: graph.total_weight(),
            sums: SumCount::default(),
            extreme: Vec::new(),
        }
    }

    fn push(&mut self, weight: f64) {
        self.sums.push(weight);
        let prev = self.extreme.last().copied();
        let next = match (self.kind, prev) {
            (_, None) => weight,
            (Aggregation::Min, Some(p)) => p.min(weight),
            (_, Some(p)) => p.max(weight),
        };
        self.extreme.push(next);
    }

    fn pop(&mut self, weight: f64) {
        self.sums.pop(weight);
        self.extreme.pop();
    }

    fn value(&self) -> Option<f64> {
        match self.kind {
            Aggregation::Min | Aggregation::Max => self.extreme.last().copied(),
            kind => self.sums.value(kind, self.total),
        }
    }
}

/// Current top-r list with `r` implicit sentinels of value -inf.
struct TopList {
    r: usize,
    entries: Vec<Community>,
}

impl TopList {
    fn threshold(&self) -> f64 {
        if self.entries.len() < self.r {
            f64::NEG_INFINITY
        } else {
            self.entries[self.r - 1].value
        }
    }

    fn contains(&self, members: &[usize]) -> bool {
        self.entries.iter().any(|c| c.members == members)
    }

    /// Replaces the r-th entry.
    fn replace_last(&mut self, community: Community) {
        if self.entries.len() == self.r {
            self.entries.pop();
        }
        self.entries.push(community);
        self.entries
            .sort_by(|a, b| rank_order(a.value, &a.members, b.value, &b.members));
    }
}

/// Heuristic size-constrained top-r search seeded from every vertex of the
/// maximal k-core. Never returns more than `r` communities, possibly fewer.
pub fn local_search(graph: &WeightedGraph, params: &SearchParams, kind: Aggregation) -> Result<ResultList> {
    params.validate()?;
    let k = params.k;
    let s = params.size_cap(graph.vertex_count());
    if s < k + 1 {
        return Ok(ResultList::default());
    }
    let mut search = LocalSearch {
        graph,
        k,
        s,
        kind,
        greedy: params.greedy,
        view: k_core(graph, k),
        scratch: CoreScratch::new(graph.vertex_count()),
        rng: StdRng::seed_from_u64(params.rng_seed),
        top: TopList {
            r: params.r,
            entries: Vec::new(),
        },
        non_overlapping: params.non_overlapping,
    };
    for seed in 0..graph.vertex_count() {
        if search.view.contains(seed) {
            search.visit(seed)?;
        }
    }
    Ok(ResultList::from_candidates(search.top.entries, params.r))
}

struct LocalSearch<'g> {
    graph: &'g WeightedGraph,
    k: usize,
    s: usize,
    kind: Aggregation,
    greedy: bool,
    non_overlapping: bool,
    view: SubgraphView<'g>,
    scratch: CoreScratch,
    rng: StdRng,
    top: TopList,
}

impl LocalSearch<'_> {
    fn visit(&mut self, seed: usize) -> Result<()> {
        let view = &self.view;
        let mut levels = hop_levels(self.graph, seed, self.s, |u| view.contains(u));
        let order: Vec<usize> = if self.greedy {
            let mut all: Vec<usize> = levels.into_iter().flatten().collect();
            all.sort_by(|&a, &b| {
                self.graph
                    .weight(b)
                    .total_cmp(&self.graph.weight(a))
                    .then(a.cmp(&b))
            });
            all
        } else {
            for level in levels.iter_mut().skip(1) {
                level.shuffle(&mut self.rng);
            }
            levels.into_iter().flatten().collect()
        };
        let accepted = match self.kind.strategy() {
            StrategyKind::Shrink => self.shrink(order),
            StrategyKind::Grow => self.grow(&order),
        };
        match accepted {
            Some(members) => self.accept(members),
            None => Ok(()),
        }
    }

    fn is_core(&mut self, members: &[usize]) -> bool {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        self.scratch.is_connected_core(self.graph, &sorted, self.k)
    }

    /// Drops the last vertex until the remainder is a connected k-core.
    fn shrink(&mut self, mut current: Vec<usize>) -> Option<Vec<usize>> {
        let mut running = Running::new(self.kind, self.graph);
        for &v in &current {
            running.push(self.graph.weight(v));
        }
        while current.len() > self.k && running.value().is_some_and(|f| f > self.top.threshold()) {
            if self.is_core(&current) {
                return Some(current);
            }
            let v = current.pop().expect("non-empty");
            running.pop(self.graph.weight(v));
        }
        None
    }

    /// Adds vertices one at a time; greedy mode takes the first feasible
    /// prefix that beats the threshold, random mode the best such prefix.
    fn grow(&mut self, order: &[usize]) -> Option<Vec<usize>> {
        let mut running = Running::new(self.kind, self.graph);
        let mut best: Option<(f64, Vec<usize>)> = None;
        for (i, &v) in order.iter().enumerate() {
            running.push(self.graph.weight(v));
            let len = i + 1;
            if len <= self.k {
                continue;
            }
            let Some(value) = running.value() else { continue };
            if value <= self.top.threshold() || !self.is_core(&order[..len]) {
                continue;
            }
            if self.greedy {
                return Some(order[..len].to_vec());
            }
            let mut members = order[..len].to_vec();
            members.sort_unstable();
            let better = best
                .as_ref()
                .is_none_or(|(bv, bm)| rank_order(value, &members, *bv, bm).is_lt());
            if better {
                best = Some((value, members));
            }
        }
        best.map(|(_, members)| members)
    }

    fn accept(&mut self, mut members: Vec<usize>) -> Result<()> {
        members.sort_unstable();
        let members = self.maximalize(members);
        if self.top.contains(&members) {
            return Ok(());
        }
        let Some(value) = rank_value(self.kind, self.graph, &members) else {
            return Ok(());
        };
        if self.non_overlapping {
            for &v in &members {
                self.view.remove(v)?;
            }
            self.view.peel(self.k);
        }
        self.top.replace_last(Community {
            members,
            value,
            k: self.k,
            kind: self.kind,
        });
        Ok(())
    }

    /// Largest connected k-core of at most `s` vertices that contains
    /// `members`, lies in the working graph and has the same value.
    fn maximalize(&mut self, members: Vec<usize>) -> Vec<usize> {
        let Some(value) = rank_value(self.kind, self.graph, &members) else {
            return members;
        };
        let graph = self.graph;
        let kind = self.kind;
        let allowed = |v: usize| -> bool {
            let w = graph.weight(v);
            match kind {
                Aggregation::Min => w >= value,
                Aggregation::Max => w <= value,
                Aggregation::Avg => true,
                Aggregation::BalancedDensity => w == 0.0,
                other => other.increment(w) == Some(0.0),
            }
        };
        let mut grower = Grower {
            graph,
            kind,
            k: self.k,
            s: self.s,
            value,
            budget: MAXIMALIZE_BUDGET,
            work: MAXIMALIZE_WORK,
            best: members.clone(),
            scratch: &mut self.scratch,
        };
        let view = &self.view;
        let candidates = |v: usize| view.contains(v) && allowed(v);
        let mut set = members.clone();
        let mut excluded = HashSet::new();
        grower.search(&mut set, &mut excluded, &candidates);
        grower.best
    }
}

struct Grower<'a> {
    graph: &'a WeightedGraph,
    kind: Aggregation,
    k: usize,
    s: usize,
    value: f64,
    budget: usize,
    work: usize,
    best: Vec<usize>,
    scratch: &'a mut CoreScratch,
}

impl Grower<'_> {
    fn search(&mut self, set: &mut Vec<usize>, excluded: &mut HashSet<usize>, candidates: &impl Fn(usize) -> bool) {
        if self.budget == 0 || self.work == 0 {
            return;
        }
        self.budget -= 1;
        if set.len() > self.best.len() {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            if rank_value(self.kind, self.graph, &sorted) == Some(self.value)
                && self.scratch.is_connected_core(self.graph, &sorted, self.k)
            {
                self.best = sorted;
            }
        }
        if set.len() >= self.s {
            return;
        }
        let scanned: usize = set.iter().map(|&v| self.graph.degree(v)).sum();
        self.work = self.work.saturating_sub(scanned);
        let next = set
            .iter()
            .flat_map(|&v| self.graph.neighbors(v).iter().copied())
            .filter(|&u| candidates(u) && !excluded.contains(&u) && !set.contains(&u))
            .min();
        let Some(u) = next else { return };
        set.push(u);
        self.search(set, excluded, candidates);
        set.pop();
        excluded.insert(u);
        self.search(set, excluded, candidates);
        excluded.remove(&u);
    }
}
