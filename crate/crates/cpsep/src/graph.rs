//! Simple undirected graphs with nonnegative integer vertex weights,
//! plus the canonical vertex-set type used by every separator routine.
//!
//! Graphs are immutable after construction: the transforms below
//! (`add_edges`, `remove_vertices`, `contract_connected_set`) return new
//! graphs, so shared references can be used freely across threads.

use crate::error::{invalid, Result};

/// Canonical vertex subset: sorted, deduplicated ids.
///
/// Equality is structural, so two sets built in different orders compare
/// equal. All separator, terminal and component sets use this type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::new(out)
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn with(&self, v: usize) -> VertexSet {
        if self.contains(v) {
            self.clone()
        } else {
            let mut m = self.0.clone();
            m.push(v);
            VertexSet::new(m)
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_proper_subset_of(&self, other: &VertexSet) -> bool {
        self.len() < other.len() && self.is_subset_of(other)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Smallest member, if any.
    pub fn min_member(&self) -> Option<usize> {
        self.0.first().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// Old-id to new-id translation produced by vertex deletion.
#[derive(Debug, Clone)]
pub struct RemapTable {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl RemapTable {
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    /// Translates a set of surviving old ids into new ids.
    /// Ids that were deleted are silently dropped.
    pub fn map_set(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.to_new(v)).collect()
    }

    /// Translates a set of new ids back into old ids.
    pub fn unmap_set(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_old(v)).collect()
    }
}

/// Simple undirected graph on dense vertex ids `0..n`, no self-loops,
/// no parallel edges. Adjacency lists are kept sorted.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    weights: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            weights: vec![1; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(n).add_edges(edges)
    }

    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.vertex_count() {
            return Err(invalid(format!(
                "expected {} weights, got {}",
                self.vertex_count(),
                weights.len()
            )));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight_of_set(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.weights[v]).sum()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            Err(invalid(format!(
                "vertex id {} out of range (n = {})",
                v,
                self.vertex_count()
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        Ok(())
    }

    /// Open neighborhood N(S): vertices outside S adjacent to some vertex of S.
    pub fn neighbors_of_set(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = Vec::new();
        for v in s.iter() {
            for &u in &self.adj[v] {
                if !s.contains(u) {
                    out.push(u);
                }
            }
        }
        Ok(VertexSet::new(out))
    }

    /// Closed neighborhood N[S] = N(S) ∪ S.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        Ok(self.neighbors_of_set(s)?.union(s))
    }

    /// True iff some edge joins the two sets.
    pub fn sets_adjacent(&self, a: &VertexSet, b: &VertexSet) -> Result<bool> {
        self.check_set(a)?;
        self.check_set(b)?;
        for v in a.iter() {
            for &u in &self.adj[v] {
                if b.contains(u) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Connected components of G - S, as a partition of V \ S.
    /// Components are ordered by smallest member; members are sorted, so
    /// the output is deterministic.
    pub fn components_after_removal(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(s)?;
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for v in s.iter() {
            seen[v] = true;
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        Ok(out)
    }

    /// Union of the components of G - S that meet A.
    pub fn component_of_set(&self, s: &VertexSet, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        self.check_set(a)?;
        if !a.is_disjoint_from(s) {
            return Err(invalid("component_of_set: A intersects the removed set S"));
        }
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for v in s.iter() {
            seen[v] = true;
        }
        let mut stack: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        for v in a.iter() {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            out.push(v);
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        Ok(VertexSet::new(out))
    }

    /// True iff S separates A from B, i.e. G - S has no A,B-path.
    /// A separator must avoid both sides; if S meets A or B this is false.
    pub fn separates(&self, a: &VertexSet, b: &VertexSet, s: &VertexSet) -> Result<bool> {
        self.check_set(a)?;
        self.check_set(b)?;
        self.check_set(s)?;
        if !s.is_disjoint_from(a) || !s.is_disjoint_from(b) {
            return Ok(false);
        }
        let side = self.component_of_set(s, a)?;
        Ok(side.is_disjoint_from(b))
    }

    /// New graph with the given edges added. Edges that already exist are
    /// ignored so the graph stays simple; self-loops are rejected.
    pub fn add_edges(&self, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in pairs {
            if u == v {
                return Err(invalid(format!("self-loop requested at vertex {}", u)));
            }
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                let pu = g.adj[u].binary_search(&v).unwrap_err();
                g.adj[u].insert(pu, v);
                let pv = g.adj[v].binary_search(&u).unwrap_err();
                g.adj[v].insert(pv, u);
            }
        }
        Ok(g)
    }

    /// Induced subgraph on V \ S, plus the id translation table.
    /// Surviving vertices keep their relative order.
    pub fn remove_vertices(&self, s: &VertexSet) -> Result<(Graph, RemapTable)> {
        self.check_set(s)?;
        let n = self.vertex_count();
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::with_capacity(n - s.len());
        for (v, slot) in old_to_new.iter_mut().enumerate() {
            if !s.contains(v) {
                *slot = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let mut g = Graph::new(new_to_old.len());
        for (new_v, &old_v) in new_to_old.iter().enumerate() {
            g.weights[new_v] = self.weights[old_v];
            g.adj[new_v] = self.adj[old_v]
                .iter()
                .filter_map(|&u| old_to_new[u])
                .collect();
        }
        Ok((
            g,
            RemapTable {
                old_to_new,
                new_to_old,
            },
        ))
    }

    /// Induced subgraph G[keep], plus the id translation table.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, RemapTable)> {
        let all: VertexSet = self.vertices().collect();
        self.remove_vertices(&all.minus(keep))
    }

    /// Contracts the connected set A to the vertex `into`: A \ {into} is
    /// removed, and `into` becomes adjacent to N(A). Remaining ids are
    /// compacted preserving order.
    pub fn contract_connected_set(&self, a: &VertexSet, into: usize) -> Result<Graph> {
        self.check_set(a)?;
        if !a.contains(into) {
            return Err(invalid("contract_connected_set: `into` must belong to A"));
        }
        if a.len() > 1 {
            let (sub, _) = self.induced_subgraph(a)?;
            if sub.components_after_removal(&VertexSet::empty())?.len() != 1 {
                return Err(invalid("contract_connected_set: G[A] is not connected"));
            }
        }
        let boundary = self.neighbors_of_set(a)?;
        let doomed = a.minus(&VertexSet::singleton(into));
        let (mut g, map) = self.remove_vertices(&doomed)?;
        let into_new = map.to_new(into).unwrap();
        let pairs: Vec<(usize, usize)> = boundary
            .iter()
            .filter_map(|v| map.to_new(v))
            .map(|v| (into_new, v))
            .collect();
        g = g.add_edges(&pairs)?;
        Ok(g)
    }
}
