//! k-core peeling, connected components and subgraph maintenance under
//! vertex deletion.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A vertex subset of a parent graph with cached in-subgraph degrees.
#[derive(Debug, Clone)]
pub struct SubgraphView<'g> {
    graph: &'g WeightedGraph,
    member: Vec<bool>,
    degree: Vec<u32>,
    len: usize,
}

impl<'g> SubgraphView<'g> {
    /// View containing every vertex of `graph`.
    pub fn full(graph: &'g WeightedGraph) -> Self {
        let n = graph.vertex_count();
        Self {
            graph,
            member: vec![true; n],
            degree: (0..n).map(|v| graph.degree(v) as u32).collect(),
            len: n,
        }
    }

    /// View over `members`; ids outside `0..n` are rejected.
    pub fn from_members(graph: &'g WeightedGraph, members: &[usize]) -> Result<Self> {
        let n = graph.vertex_count();
        let mut member = vec![false; n];
        for &v in members {
            if v >= n {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range for n = {n}")));
            }
            member[v] = true;
        }
        let mut degree = vec![0u32; n];
        let mut len = 0;
        for v in 0..n {
            if member[v] {
                len += 1;
                degree[v] = graph.neighbors(v).iter().filter(|&&u| member[u]).count() as u32;
            }
        }
        Ok(Self {
            graph,
            member,
            degree,
            len,
        })
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-subgraph degree of `v` (zero for non-members).
    pub fn degree(&self, v: usize) -> usize {
        if self.contains(v) {
            self.degree[v] as usize
        } else {
            0
        }
    }

    /// Members in ascending id order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&v| self.member[v]).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.member.len()).filter(|&v| self.member[v]).map(|v| self.degree[v] as usize).min()
    }

    /// Deletes `v`, updating neighbour degrees. No peeling.
    pub fn remove(&mut self, v: usize) -> Result<()> {
        if !self.contains(v) {
            return Err(Error::NotAMember(v));
        }
        self.member[v] = false;
        self.degree[v] = 0;
        self.len -= 1;
        for &u in self.graph.neighbors(v) {
            if self.member[u] {
                self.degree[u] -= 1;
            }
        }
        Ok(())
    }

    /// Repeatedly deletes members with degree below `k`. Returns the peeled
    /// vertices in deletion order.
    pub fn peel(&mut self, k: usize) -> Vec<usize> {
        let mut queue: VecDeque<usize> = (0..self.member.len())
            .filter(|&v| self.member[v] && (self.degree[v] as usize) < k)
            .collect();
        let mut queued = vec![false; self.member.len()];
        for &v in &queue {
            queued[v] = true;
        }
        let mut peeled = Vec::new();
        while let Some(v) = queue.pop_front() {
            self.member[v] = false;
            self.degree[v] = 0;
            self.len -= 1;
            peeled.push(v);
            for &u in self.graph.neighbors(v) {
                if self.member[u] {
                    self.degree[u] -= 1;
                    if (self.degree[u] as usize) < k && !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        peeled
    }
}

/// Core number of every vertex (bucket-queue peeling, O(n + m)).
pub fn core_numbers(graph: &WeightedGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // Vertices sorted by degree; bin[d] is the first slot holding degree d.
    let mut bin = vec![0usize; max_degree + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for slot in bin.iter_mut() {
        let count = *slot;
        *slot = start;
        start += count;
    }
    let mut order = vec![0usize; n];
    let mut position = vec![0usize; n];
    for v in 0..n {
        position[v] = bin[degree[v]];
        order[position[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_degree).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        for &u in graph.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = position[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    position[u] = pw;
                    position[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// Largest k with a non-empty k-core (0 for an edgeless or empty graph).
pub fn degeneracy(graph: &WeightedGraph) -> usize {
    core_numbers(graph).into_iter().max().unwrap_or(0)
}

/// The maximal vertex set whose induced subgraph has minimum degree `k`.
pub fn k_core(graph: &WeightedGraph, k: usize) -> SubgraphView<'_> {
    let cores = core_numbers(graph);
    let members: Vec<usize> = (0..graph.vertex_count()).filter(|&v| cores[v] >= k).collect();
    SubgraphView::from_members(graph, &members).expect("core members are in range")
}

/// Maximal connected member sets of `view`, each ascending, ordered by
/// smallest member.
pub fn connected_components(view: &SubgraphView<'_>) -> Vec<Vec<usize>> {
    let graph = view.graph();
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if !view.contains(start) || seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut component = Vec::new();
        while let Some(v) = queue.pop_front() {
            component.push(v);
            for &u in graph.neighbors(v) {
                if view.contains(u) && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Deletes `v` from a connected k-core view, re-peels to the k-core and
/// splits the survivors into connected views.
pub fn remove_and_recore<'g>(view: &SubgraphView<'g>, v: usize, k: usize) -> Result<Vec<SubgraphView<'g>>> {
    if !view.contains(v) {
        return Err(Error::NotAMember(v));
    }
    let mut scratch = CoreScratch::new(view.graph().vertex_count());
    let members = view.members();
    scratch
        .core_components(view.graph(), &members, Some(v), k)
        .into_iter()
        .map(|component| SubgraphView::from_members(view.graph(), &component))
        .collect()
}

/// Adjacency lists longer than this multiple of the member count are probed
/// by binary search instead of scanned.
const SCAN_FACTOR: usize = 8;

/// Reusable buffers for peeling small member lists inside a large graph
/// without O(n) work per call.
#[derive(Debug)]
pub(crate) struct CoreScratch {
    member: Vec<bool>,
    degree: Vec<u32>,
    seen: Vec<bool>,
}

impl CoreScratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            member: vec![false; n],
            degree: vec![0; n],
            seen: vec![false; n],
        }
    }

    fn load(&mut self, graph: &WeightedGraph, members: &[usize], skip: Option<usize>) {
        for &v in members {
            if Some(v) != skip {
                self.member[v] = true;
            }
        }
        for &v in members {
            if self.member[v] {
                self.degree[v] = self.inner_degree(graph, members, v) as u32;
            }
        }
    }

    /// Member neighbours of `v`, probing `members` by binary search when the
    /// adjacency list of `v` is much longer than the member list.
    fn inner_degree(&self, graph: &WeightedGraph, members: &[usize], v: usize) -> usize {
        if graph.degree(v) > SCAN_FACTOR * members.len() {
            members.iter().filter(|&&u| self.member[u] && graph.has_edge(v, u)).count()
        } else {
            graph.neighbors(v).iter().filter(|&&u| self.member[u]).count()
        }
    }

    fn clear(&mut self, members: &[usize]) {
        for &v in members {
            self.member[v] = false;
            self.degree[v] = 0;
            self.seen[v] = false;
        }
    }

    fn peel(&mut self, graph: &WeightedGraph, members: &[usize], k: usize) {
        let mut stack: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&v| self.member[v] && (self.degree[v] as usize) < k)
            .collect();
        for &v in &stack {
            self.member[v] = false;
        }
        while let Some(v) = stack.pop() {
            for &u in graph.neighbors(v) {
                if self.member[u] {
                    self.degree[u] -= 1;
                    if (self.degree[u] as usize) < k {
                        self.member[u] = false;
                        stack.push(u);
                    }
                }
            }
        }
    }

    /// Connected components of the k-core of `members \ {skip}`.
    pub(crate) fn core_components(
        &mut self,
        graph: &WeightedGraph,
        members: &[usize],
        skip: Option<usize>,
        k: usize,
    ) -> Vec<Vec<usize>> {
        self.load(graph, members, skip);
        self.peel(graph, members, k);
        let mut sorted: Vec<usize> = members.iter().copied().filter(|&v| self.member[v]).collect();
        sorted.sort_unstable();
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for &start in &sorted {
            if self.seen[start] {
                continue;
            }
            self.seen[start] = true;
            stack.push(start);
            let mut component = Vec::new();
            while let Some(v) = stack.pop() {
                component.push(v);
                for &u in graph.neighbors(v) {
                    if self.member[u] && !self.seen[u] {
                        self.seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        self.clear(members);
        components
    }

    /// True if `members` induces a connected subgraph with minimum degree `k`.
    /// Nothing is peeled: a single deficient vertex fails the test.
    pub(crate) fn is_connected_core(&mut self, graph: &WeightedGraph, members: &[usize], k: usize) -> bool {
        if members.is_empty() {
            return false;
        }
        self.load(graph, members, None);
        let cohesive = members.iter().all(|&v| self.degree[v] as usize >= k);
        let mut connected = false;
        if cohesive {
            let mut stack = vec![members[0]];
            self.seen[members[0]] = true;
            let mut reached = 0;
            while let Some(v) = stack.pop() {
                reached += 1;
                let probe = graph.degree(v) > SCAN_FACTOR * members.len();
                let adjacent: &[usize] = if probe { members } else { graph.neighbors(v) };
                for &u in adjacent {
                    if self.member[u] && !self.seen[u] && (!probe || graph.has_edge(v, u)) {
                        self.seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            connected = reached == members.len();
        }
        self.clear(members);
        cohesive && connected
    }
}
