//! Brute-force reference implementations of every predicate and optimum,
//! for desk-scale verification. Nothing here shares logic with the
//! production modules beyond the `Graph` and spec data types: reachability
//! is recomputed with union-find instead of depth-first traversal, so a
//! bug has to be made twice to go unnoticed.

use crate::constraints::ConstraintSpec;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::nmwcu::{NmwcuInstance, NmwcuSolution};
use std::collections::HashMap;

/// Enumeration limits. Everything aborts cleanly past the caps.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_k: usize,
    pub subset_cap: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 12,
            max_k: 4,
            subset_cap: 1 << 20,
        }
    }
}

fn over_budget(msg: &str) -> Error {
    Error::ResourceLimit(format!("oracle budget exceeded: {}", msg))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Component labels of G - S via union-find; deleted vertices get usize::MAX.
fn uf_components(g: &Graph, s: &VertexSet) -> Vec<usize> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in g.edges() {
        if !s.contains(u) && !s.contains(v) {
            uf.union(u, v);
        }
    }
    (0..n)
        .map(|v| if s.contains(v) { usize::MAX } else { uf.find(v) })
        .collect()
}

/// Independent separation test: no A,B path in G - S (false if S meets A or B).
pub fn separates_independent(g: &Graph, a: &VertexSet, b: &VertexSet, s: &VertexSet) -> bool {
    if a.iter().any(|v| s.contains(v)) || b.iter().any(|v| s.contains(v)) {
        return false;
    }
    let comp = uf_components(g, s);
    for u in a.iter() {
        for v in b.iter() {
            if comp[u] == comp[v] {
                return false;
            }
        }
    }
    true
}

/// Independent evaluation of the connectivity constraint on G - S.
pub fn cp_evaluate_independent(
    g: &Graph,
    parts: &[VertexSet],
    q: &VertexSet,
    b: &VertexSet,
    s: &VertexSet,
) -> bool {
    let comp = uf_components(g, s);
    for part in parts {
        let mut label = None;
        for v in part.iter() {
            if s.contains(v) {
                return false;
            }
            match label {
                None => label = Some(comp[v]),
                Some(l) => {
                    if comp[v] != l {
                        return false;
                    }
                }
            }
        }
    }
    for qv in q.iter() {
        if s.contains(qv) {
            return false;
        }
        if !b.iter().any(|bv| !s.contains(bv) && comp[bv] == comp[qv]) {
            return false;
        }
    }
    true
}

/// Generates, in colexicographic order within ascending size, all subsets
/// of `pool` with at most `max_size` elements, and feeds them to `f`.
fn for_each_subset(
    pool: &[usize],
    max_size: usize,
    cap: usize,
    mut f: impl FnMut(&VertexSet),
) -> Result<()> {
    let m = pool.len();
    let mut visited = 0usize;
    let mut indices: Vec<usize> = Vec::new();
    // colex: extend by the largest index; recursion expressed iteratively
    fn rec(
        pool: &[usize],
        size: usize,
        start_below: usize,
        indices: &mut Vec<usize>,
        visited: &mut usize,
        cap: usize,
        f: &mut impl FnMut(&VertexSet),
    ) -> Result<()> {
        if indices.len() == size {
            *visited += 1;
            if *visited > cap {
                return Err(over_budget("subset enumeration cap"));
            }
            let set: VertexSet = indices.iter().map(|&i| pool[i]).collect();
            f(&set);
            return Ok(());
        }
        let need = size - indices.len();
        for h in (need - 1)..start_below {
            indices.push(h);
            rec(pool, size, h, indices, visited, cap, f)?;
            indices.pop();
        }
        Ok(())
    }
    for size in 0..=max_size.min(m) {
        rec(pool, size, m, &mut indices, &mut visited, cap, &mut f)?;
    }
    Ok(())
}

/// Every S ⊆ V \ (A ∪ B) with |S| ≤ max_size separating A from B.
pub fn all_separators(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    max_size: usize,
    budget: &OracleBudget,
) -> Result<Vec<VertexSet>> {
    if g.vertex_count() > budget.max_n {
        return Err(over_budget("graph too large"));
    }
    let pool: Vec<usize> = g
        .vertices()
        .filter(|&v| !a.contains(v) && !b.contains(v))
        .collect();
    let mut out = Vec::new();
    for_each_subset(&pool, max_size, budget.subset_cap, |s| {
        if separates_independent(g, a, b, s) {
            out.push(s.clone());
        }
    })?;
    Ok(out)
}

/// Smallest cardinality of an A,B-separator, or None when none exists.
pub fn brute_min_separator_size(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    budget: &OracleBudget,
) -> Result<Option<usize>> {
    let seps = all_separators(g, a, b, g.vertex_count(), budget)?;
    Ok(seps.iter().map(|s| s.len()).min())
}

/// Smallest total weight of an A,B-separator, or None when none exists.
pub fn brute_min_separator_weight(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    budget: &OracleBudget,
) -> Result<Option<u64>> {
    let seps = all_separators(g, a, b, g.vertex_count(), budget)?;
    Ok(seps.iter().map(|s| g.weight_of_set(s)).min())
}

/// All minimum-cardinality A,B-separators.
pub fn all_minimum_separators(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    budget: &OracleBudget,
) -> Result<Vec<VertexSet>> {
    let seps = all_separators(g, a, b, g.vertex_count(), budget)?;
    let min = match seps.iter().map(|s| s.len()).min() {
        Some(m) => m,
        None => return Ok(Vec::new()),
    };
    Ok(seps.into_iter().filter(|s| s.len() == min).collect())
}

/// All inclusion-minimal A,B-separators of size at most `max_size`.
pub fn all_minimal_separators(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    max_size: usize,
    budget: &OracleBudget,
) -> Result<Vec<VertexSet>> {
    let seps = all_separators(g, a, b, max_size, budget)?;
    Ok(seps
        .iter()
        .filter(|s| {
            s.iter().all(|w| {
                let smaller = s.minus(&VertexSet::singleton(w));
                !separates_independent(g, a, b, &smaller)
            })
        })
        .cloned()
        .collect())
}

/// Ground truth for the enumeration engine: all minimal, constraint-
/// satisfying, important sA,t-separators of size at most k. Importance is
/// applied pairwise over the full constraint-satisfying minimal pool.
pub fn all_cp_important(
    g: &Graph,
    s: usize,
    a: &VertexSet,
    t: usize,
    spec: &ConstraintSpec,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<VertexSet>> {
    let sa = a.with(s);
    let tset = VertexSet::singleton(t);
    let minimal = all_minimal_separators(g, &sa, &tset, k, budget)?;
    let cp: Vec<VertexSet> = minimal
        .into_iter()
        .filter(|sep| cp_evaluate_independent(g, spec.parts(), spec.q(), spec.b(), sep))
        .collect();
    let mut sides: Vec<VertexSet> = Vec::with_capacity(cp.len());
    for sep in &cp {
        let comp = uf_components(g, sep);
        let side: VertexSet = g
            .vertices()
            .filter(|&v| !sep.contains(v) && sa.iter().any(|x| comp[x] == comp[v]))
            .collect();
        sides.push(side);
    }
    let mut out: Vec<VertexSet> = Vec::new();
    for (i, sep) in cp.iter().enumerate() {
        let dominated = cp.iter().enumerate().any(|(j, other)| {
            j != i && other.len() <= sep.len() && sides[j].is_proper_subset_of(&sides[i])
        });
        if !dominated {
            out.push(sep.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// All minimal constraint-satisfying sA,t-separators of size at most k
/// (the pool importance and closeness quantify over).
pub fn all_cp_minimal(
    g: &Graph,
    s: usize,
    a: &VertexSet,
    t: usize,
    spec: &ConstraintSpec,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<VertexSet>> {
    let sa = a.with(s);
    let tset = VertexSet::singleton(t);
    let minimal = all_minimal_separators(g, &sa, &tset, k, budget)?;
    Ok(minimal
        .into_iter()
        .filter(|sep| cp_evaluate_independent(g, spec.parts(), spec.q(), spec.b(), sep))
        .collect())
}

/// True iff G - cut realizes the terminal partition exactly: each part
/// lies in one component, and no component holds two parts.
pub fn partition_realized_independent(g: &Graph, parts: &[VertexSet], cut: &VertexSet) -> bool {
    let comp = uf_components(g, cut);
    let mut labels = Vec::with_capacity(parts.len());
    for part in parts {
        let mut label = None;
        for v in part.iter() {
            if cut.contains(v) {
                return false;
            }
            match label {
                None => label = Some(comp[v]),
                Some(l) => {
                    if comp[v] != l {
                        return false;
                    }
                }
            }
        }
        match label {
            Some(l) => labels.push(l),
            None => return false,
        }
    }
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] == labels[j] {
                return false;
            }
        }
    }
    true
}

/// Exhaustive optimum for node multiway cut-uncut: minimum weight over
/// all vertex sets of size at most k, disjoint from the terminals, whose
/// removal realizes the partition.
pub fn brute_nmwcu(instance: &NmwcuInstance, budget: &OracleBudget) -> Result<NmwcuSolution> {
    let g = &instance.graph;
    if g.vertex_count() > budget.max_n {
        return Err(over_budget("graph too large"));
    }
    if instance.k > budget.max_k {
        return Err(over_budget("k too large"));
    }
    let terminals = instance
        .parts
        .iter()
        .fold(VertexSet::empty(), |acc, p| acc.union(p));
    let pool: Vec<usize> = g.vertices().filter(|&v| !terminals.contains(v)).collect();
    let mut best: Option<(u64, VertexSet)> = None;
    for_each_subset(&pool, instance.k, budget.subset_cap, |cut| {
        if partition_realized_independent(g, &instance.parts, cut) {
            let w = g.weight_of_set(cut);
            let better = match &best {
                None => true,
                Some((bw, _)) => w < *bw,
            };
            if better {
                best = Some((w, cut.clone()));
            }
        }
    })?;
    Ok(match best {
        Some((w, cut)) => NmwcuSolution {
            feasible: true,
            cut,
            total_weight: w,
            pairs_processed: 0,
        },
        None => NmwcuSolution {
            feasible: false,
            cut: VertexSet::empty(),
            total_weight: 0,
            pairs_processed: 0,
        },
    })
}

/// Maximum number of internally vertex-disjoint s,t-paths, by exhaustive
/// path enumeration and exact set packing over internal-vertex masks.
pub fn max_vertex_disjoint_paths(
    g: &Graph,
    s: usize,
    t: usize,
    budget: &OracleBudget,
) -> Result<usize> {
    let n = g.vertex_count();
    if n > budget.max_n {
        return Err(over_budget("graph too large"));
    }
    let inner: Vec<usize> = g.vertices().filter(|&v| v != s && v != t).collect();
    let idx_of: HashMap<usize, usize> = inner.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    // all simple s,t-paths as masks over internal vertices
    let mut paths: Vec<u64> = Vec::new();
    let mut stack: Vec<(usize, u64)> = vec![(s, 0u64)];
    while let Some((v, mask)) = stack.pop() {
        if paths.len() > budget.subset_cap {
            return Err(over_budget("path enumeration cap"));
        }
        for &u in g.neighbors(v) {
            if u == t {
                paths.push(mask);
            } else if u != s {
                let bit = 1u64 << idx_of[&u];
                if mask & bit == 0 {
                    stack.push((u, mask | bit));
                }
            }
        }
    }
    paths.sort_unstable();
    paths.dedup();

    fn pack(avail: u64, paths: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
        if let Some(&v) = memo.get(&avail) {
            return v;
        }
        let mut best = 0;
        for &p in paths {
            if p & !avail == 0 {
                best = best.max(1 + pack(avail & !p, paths, memo));
            }
        }
        memo.insert(avail, best);
        best
    }
    let full = if inner.is_empty() {
        0
    } else {
        (1u64 << inner.len()) - 1
    };
    let mut memo = HashMap::new();
    Ok(pack(full, &paths, &mut memo))
}
