//! Monotone connectivity constraints: a conjunction of "each listed part
//! stays inside one component" atoms and "each listed vertex keeps a path
//! to the target set B" atoms, evaluated on G - S.

use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// The tuple (A, B, parts, Q). `parts` are pairwise disjoint subsets of A
/// that must each remain within a single component; every vertex of `Q`
/// must stay connected to `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSpec {
    a: VertexSet,
    b: VertexSet,
    parts: Vec<VertexSet>,
    q: VertexSet,
}

/// JSON form: `{"parts": [[..],[..]], "Q": [..], "B": [..], "A": [..]}`,
/// where `A` defaults to the union of the parts when omitted.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConstraintSpecJson {
    #[serde(default)]
    pub parts: Vec<Vec<usize>>,
    #[serde(rename = "Q", default)]
    pub q: Vec<usize>,
    #[serde(rename = "B", default)]
    pub b: Vec<usize>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<usize>>,
}

impl ConstraintSpec {
    pub fn new(a: VertexSet, b: VertexSet, parts: Vec<VertexSet>, q: VertexSet) -> Result<Self> {
        for (i, p) in parts.iter().enumerate() {
            if !p.is_subset_of(&a) {
                return Err(invalid(format!("part {} is not contained in A", i)));
            }
            for other in parts.iter().skip(i + 1) {
                if !p.is_disjoint_from(other) {
                    return Err(invalid("parts must be pairwise disjoint"));
                }
            }
        }
        Ok(ConstraintSpec { a, b, parts, q })
    }

    /// Spec with A implied as the union of the parts.
    pub fn from_parts(parts: Vec<VertexSet>, q: VertexSet, b: VertexSet) -> Result<Self> {
        let mut a = VertexSet::empty();
        for p in &parts {
            a = a.union(p);
        }
        ConstraintSpec::new(a, b, parts, q)
    }

    /// The trivially-true constraint (no parts, no Q).
    pub fn trivial() -> Self {
        ConstraintSpec {
            a: VertexSet::empty(),
            b: VertexSet::empty(),
            parts: Vec::new(),
            q: VertexSet::empty(),
        }
    }

    pub fn from_json(j: &ConstraintSpecJson) -> Result<Self> {
        let parts: Vec<VertexSet> = j.parts.iter().map(|p| VertexSet::new(p.clone())).collect();
        let q = VertexSet::new(j.q.clone());
        let b = VertexSet::new(j.b.clone());
        match &j.a {
            Some(a) => ConstraintSpec::new(VertexSet::new(a.clone()), b, parts, q),
            None => ConstraintSpec::from_parts(parts, q, b),
        }
    }

    pub fn to_json(&self) -> ConstraintSpecJson {
        ConstraintSpecJson {
            parts: self.parts.iter().map(|p| p.as_slice().to_vec()).collect(),
            q: self.q.as_slice().to_vec(),
            b: self.b.as_slice().to_vec(),
            a: Some(self.a.as_slice().to_vec()),
        }
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn q(&self) -> &VertexSet {
        &self.q
    }

    /// Structural size bound: total part membership plus |Q|.
    pub fn atom_count(&self) -> usize {
        self.parts.iter().map(|p| p.len()).sum::<usize>() + self.q.len()
    }
}

/// Evaluates the constraint on G - S.
///
/// Returns true iff every part avoids S and lies inside one component of
/// G - S, and every Q-vertex avoids S and reaches a surviving B-vertex.
/// A part or Q-vertex deleted by S makes the constraint false: a deleted
/// terminal cannot be connected to anything.
pub fn evaluate(g: &Graph, spec: &ConstraintSpec, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    g.check_set(spec.a())?;
    g.check_set(spec.b())?;
    g.check_set(spec.q())?;

    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    for (idx, c) in g.components_after_removal(s)?.iter().enumerate() {
        for v in c.iter() {
            comp[v] = idx;
        }
    }

    for part in spec.parts() {
        let mut first: Option<usize> = None;
        for v in part.iter() {
            if s.contains(v) {
                return Ok(false);
            }
            match first {
                None => first = Some(comp[v]),
                Some(c) => {
                    if comp[v] != c {
                        return Ok(false);
                    }
                }
            }
        }
    }

    if !spec.q().is_empty() {
        let mut b_comps = vec![false; n + 1];
        for v in spec.b().iter() {
            if !s.contains(v) {
                b_comps[comp[v]] = true;
            }
        }
        for qv in spec.q().iter() {
            if s.contains(qv) || !b_comps[comp[qv]] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Alias of [`evaluate`]; the vocabulary used by the separator predicates.
pub fn models(g: &Graph, spec: &ConstraintSpec, s: &VertexSet) -> Result<bool> {
    evaluate(g, spec, s)
}

/// True iff S separates `side_a` from `side_b` in G and G - S satisfies
/// the constraint.
pub fn is_cp_separator(
    g: &Graph,
    spec: &ConstraintSpec,
    s: &VertexSet,
    side_a: &VertexSet,
    side_b: &VertexSet,
) -> Result<bool> {
    Ok(g.separates(side_a, side_b, s)? && evaluate(g, spec, s)?)
}
