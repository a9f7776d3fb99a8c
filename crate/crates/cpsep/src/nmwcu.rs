//! Exact minimum-weight node multiway cut-uncut for separator budgets k:
//! delete at most k non-terminal vertices so that two terminals end up in
//! the same component exactly when they share a part.
//!
//! The solver peels off the first part: it enumerates the close
//! constraint-preserving separators around the first part and around the
//! rest, pairs them, takes a minimum-weight separator between the two
//! resulting sides, and recurses on the remainder. Candidates are
//! validated against the partition semantics before they can win, so the
//! returned cut is always a genuine solution.

use crate::constraints::ConstraintSpec;
use crate::enumerate::{self, EnumContext};
use crate::error::{invalid, Result};
use crate::flow;
use crate::graph::{Graph, VertexSet};
use crate::septools;

/// A multiway cut-uncut instance: vertex-weighted graph, a partition of
/// the terminals into parts that must stay internally connected and
/// pairwise separated, and the deletion budget k.
#[derive(Debug, Clone)]
pub struct NmwcuInstance {
    pub graph: Graph,
    pub parts: Vec<VertexSet>,
    pub k: usize,
}

impl NmwcuInstance {
    pub fn new(graph: Graph, parts: Vec<VertexSet>, k: usize) -> Result<Self> {
        for (i, p) in parts.iter().enumerate() {
            graph.check_set(p)?;
            if p.is_empty() {
                return Err(invalid("parts must be nonempty"));
            }
            for other in parts.iter().skip(i + 1) {
                if !p.is_disjoint_from(other) {
                    return Err(invalid("parts must be pairwise disjoint"));
                }
            }
        }
        Ok(NmwcuInstance { graph, parts, k })
    }

    pub fn terminals(&self) -> VertexSet {
        self.parts
            .iter()
            .fold(VertexSet::empty(), |acc, p| acc.union(p))
    }
}

/// Solver outcome. `feasible` is false iff no qualifying cut of size at
/// most k exists; `pairs_processed` counts the separator pairs examined
/// across all recursion levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NmwcuSolution {
    pub feasible: bool,
    pub cut: VertexSet,
    pub total_weight: u64,
    pub pairs_processed: u64,
}

impl NmwcuSolution {
    fn infeasible(pairs: u64) -> Self {
        NmwcuSolution {
            feasible: false,
            cut: VertexSet::empty(),
            total_weight: 0,
            pairs_processed: pairs,
        }
    }
}

/// True iff G - cut realizes the partition: every part inside a single
/// component, and no component containing two parts.
pub fn partition_realized(g: &Graph, parts: &[VertexSet], cut: &VertexSet) -> Result<bool> {
    let mut sides: Vec<VertexSet> = Vec::with_capacity(parts.len());
    for part in parts {
        if !part.is_disjoint_from(cut) || part.is_empty() {
            return Ok(false);
        }
        let rep = part.min_member().expect("nonempty");
        let side = g.component_of_set(cut, &VertexSet::singleton(rep))?;
        if !part.is_subset_of(&side) {
            return Ok(false);
        }
        sides.push(side);
    }
    for i in 0..sides.len() {
        for j in (i + 1)..sides.len() {
            if !sides[i].is_disjoint_from(&sides[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The constraint-preserving A,B-separators of size at most k that are
/// close to A: no other qualifying separator has a strictly smaller
/// A-side. Computed by enumerating the important separators towards a
/// single sink vertex merged over B, then filtering for closeness.
pub fn close_separators(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    spec: &ConstraintSpec,
    k: usize,
) -> Result<Vec<VertexSet>> {
    g.check_set(a)?;
    g.check_set(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(invalid("close_separators: terminal sets must be nonempty"));
    }
    if !a.is_disjoint_from(b) || g.sets_adjacent(a, b)? {
        // no separator can exclude both sides
        return Ok(Vec::new());
    }
    let s = a.min_member().expect("nonempty");
    let t = b.min_member().expect("nonempty");
    // merge B towards t so a single sink represents the whole set
    let merged = g.add_edges(
        &g.closed_neighborhood(b)?
            .iter()
            .filter(|&u| u != t)
            .map(|u| (t, u))
            .collect::<Vec<_>>(),
    )?;
    let ctx = EnumContext::new(
        merged,
        s,
        t,
        a.minus(&VertexSet::singleton(s)),
        spec.q().clone(),
        spec.parts().to_vec(),
        k,
    )?;
    let (important, _) = enumerate::gen_seps(&ctx)?;
    let mut out = Vec::new();
    for sep in &important {
        if septools::is_close(g, a, b, spec, sep, &important)? {
            out.push(sep.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// The pair graph: G plus edges merging the closed neighborhood of C1
/// into s and of Co into t. Returns None when the guard So ∩ C1 fails.
pub fn build_pair_graph(
    g: &Graph,
    s: usize,
    t: usize,
    s1: &VertexSet,
    so: &VertexSet,
    c1: &VertexSet,
    co: &VertexSet,
) -> Result<Option<Graph>> {
    if !s1.is_disjoint_from(c1) || !so.is_disjoint_from(co) {
        return Err(invalid("build_pair_graph: a separator meets its own side"));
    }
    if !so.is_disjoint_from(c1) {
        return Ok(None);
    }
    let mut pairs: Vec<(usize, usize)> = g
        .closed_neighborhood(c1)?
        .iter()
        .filter(|&u| u != s)
        .map(|u| (s, u))
        .collect();
    pairs.extend(
        g.closed_neighborhood(co)?
            .iter()
            .filter(|&u| u != t)
            .map(|u| (t, u)),
    );
    Ok(Some(g.add_edges(&pairs)?))
}

/// Minimum-weight solution of size at most k, or infeasible.
pub fn solve(instance: &NmwcuInstance) -> Result<NmwcuSolution> {
    let mut pairs_processed = 0u64;
    let cut = solve_rec(
        &instance.graph,
        &instance.parts,
        instance.k as i64,
        &mut pairs_processed,
    )?;
    Ok(match cut {
        Some(cut) => {
            let total_weight = instance.graph.weight_of_set(&cut);
            NmwcuSolution {
                feasible: true,
                cut,
                total_weight,
                pairs_processed,
            }
        }
        None => NmwcuSolution::infeasible(pairs_processed),
    })
}

fn solve_rec(
    g: &Graph,
    parts: &[VertexSet],
    k: i64,
    pairs_processed: &mut u64,
) -> Result<Option<VertexSet>> {
    if k < 0 {
        return Ok(None);
    }
    // two parts sharing a vertex or an edge can never be separated
    for (i, p) in parts.iter().enumerate() {
        for other in parts.iter().skip(i + 1) {
            if !p.is_disjoint_from(other) || g.sets_adjacent(p, other)? {
                return Ok(None);
            }
        }
    }
    if parts.len() <= 1 {
        // nothing to separate; the only demand left is internal
        // connectivity of the single part
        return Ok(match parts.first() {
            Some(p) => {
                let side = g.component_of_set(&VertexSet::empty(), &VertexSet::singleton(p.min_member().unwrap()))?;
                if p.is_subset_of(&side) {
                    Some(VertexSet::empty())
                } else {
                    None
                }
            }
            None => Some(VertexSet::empty()),
        });
    }

    // vertices adjacent to two parts lie in every solution
    let mut forced = VertexSet::empty();
    for (i, p) in parts.iter().enumerate() {
        let np = g.neighbors_of_set(p)?;
        for other in parts.iter().skip(i + 1) {
            forced = forced.union(&np.intersect(&g.neighbors_of_set(other)?));
        }
    }
    let k = k - forced.len() as i64;
    if k < 0 {
        return Ok(None);
    }
    let (g, map) = g.remove_vertices(&forced)?;
    let parts: Vec<VertexSet> = parts.iter().map(|p| map.map_set(p)).collect();

    if k == 0 {
        return Ok(if partition_realized(&g, &parts, &VertexSet::empty())? {
            Some(forced)
        } else {
            None
        });
    }

    // the peeled part is the one holding the smallest vertex id
    let first_idx = (0..parts.len())
        .min_by_key(|&i| parts[i].min_member().expect("parts are nonempty"))
        .expect("at least two parts here");
    let first = &parts[first_idx];
    let rest: Vec<VertexSet> = parts
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != first_idx)
        .map(|(_, p)| p.clone())
        .collect();
    let rest_union = rest
        .iter()
        .fold(VertexSet::empty(), |acc, p| acc.union(p));
    let spec_first =
        ConstraintSpec::new(first.clone(), first.clone(), vec![first.clone()], VertexSet::empty())?;
    let spec_rest = ConstraintSpec::new(
        rest_union.clone(),
        rest_union.clone(),
        rest.clone(),
        VertexSet::empty(),
    )?;

    let fam_first = close_separators(&g, first, &rest_union, &spec_first, k as usize)?;
    let fam_rest = close_separators(&g, &rest_union, first, &spec_rest, k as usize)?;

    let mut best: Option<(u64, VertexSet)> = None;
    for s1 in &fam_first {
        let c1 = g.component_of_set(s1, first)?;
        for so in &fam_rest {
            if !so.is_disjoint_from(&c1) {
                continue;
            }
            *pairs_processed += 1;
            let co = g.component_of_set(so, &rest_union)?;
            if !c1.is_disjoint_from(&co) || g.sets_adjacent(&c1, &co)? {
                // degenerate pair: the merged sides overlap or touch, so
                // no separator can exclude both
                continue;
            }
            // minimum-weight separator between the merged sides (both
            // sides protected, matching a minimum cut of the pair graph)
            let msep = flow::min_weight_separator(&g, &c1, &co)?;
            if msep.kappa_is_infinite {
                continue;
            }
            let t_prime = msep.separator;
            let k_rest = k - t_prime.len() as i64;
            if k_rest < 0 {
                continue;
            }
            let rest_side = g.component_of_set(&t_prime, &rest_union)?;
            if rest.iter().any(|p| !p.is_subset_of(&rest_side)) {
                continue;
            }
            let (sub, sub_map) = g.induced_subgraph(&rest_side)?;
            let sub_parts: Vec<VertexSet> = rest.iter().map(|p| sub_map.map_set(p)).collect();
            let sub_cut = solve_rec(&sub, &sub_parts, k_rest, pairs_processed)?;
            let Some(sub_cut) = sub_cut else { continue };
            let total = t_prime.union(&sub_map.unmap_set(&sub_cut));
            if total.len() as i64 > k {
                continue;
            }
            if !partition_realized(&g, &parts, &total)? {
                continue;
            }
            let w = g.weight_of_set(&total);
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, total));
            }
        }
    }

    Ok(best.map(|(_, cut)| forced.union(&map.unmap_set(&cut))))
}
