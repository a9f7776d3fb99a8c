//! Structural predicates on separators: minimality, minimalization,
//! importance and closeness relative to an explicit pool, plus exact
//! enumeration of minimal hitting sets over small universes.

use crate::constraints::{self, ConstraintSpec};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::Serialize;

/// True iff S is an inclusion-minimal A,B-separator: it separates, and
/// every member touches both an A-meeting and a B-meeting component of
/// G - S. Sets intersecting A ∪ B are not separators at all.
pub fn is_minimal_separator(g: &Graph, a: &VertexSet, b: &VertexSet, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    if !g.separates(a, b, s)? {
        return Ok(false);
    }
    let comps = g.components_after_removal(s)?;
    for w in s.iter() {
        let mut touches_a = false;
        let mut touches_b = false;
        for c in &comps {
            let meets_w = g.neighbors(w).iter().any(|&u| c.contains(u));
            if !meets_w {
                continue;
            }
            if !c.is_disjoint_from(a) {
                touches_a = true;
            }
            if !c.is_disjoint_from(b) {
                touches_b = true;
            }
            if touches_a && touches_b {
                break;
            }
        }
        if !(touches_a && touches_b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shrinks an A,B-separator to a minimal one contained in it, by
/// projecting onto the boundary of the A-side and then of the B-side.
///
/// The A-side component set never shrinks in the process; it is preserved
/// exactly whenever every dropped vertex was redundant on both sides.
pub fn minimalize(g: &Graph, a: &VertexSet, b: &VertexSet, s: &VertexSet) -> Result<VertexSet> {
    if !g.separates(a, b, s)? {
        return Err(invalid("minimalize: S is not an A,B-separator"));
    }
    let side_a = g.component_of_set(s, a)?;
    let s1 = g.neighbors_of_set(&side_a)?;
    let side_b = g.component_of_set(&s1, b)?;
    let s2 = g.neighbors_of_set(&side_b)?;
    debug_assert!(s2.is_subset_of(&s1) && s1.is_subset_of(s));
    Ok(s2)
}

/// Importance of S relative to an explicit pool of candidate separators
/// sharing the same terminals: S is important iff no pool member of at
/// most its size has a strictly smaller A-side.
pub fn is_important(
    g: &Graph,
    a: &VertexSet,
    _b: &VertexSet,
    s: &VertexSet,
    pool: &[VertexSet],
) -> Result<bool> {
    let my_side = g.component_of_set(s, a)?;
    for other in pool {
        if other == s || other.len() > s.len() {
            continue;
        }
        let side = g.component_of_set(other, a)?;
        if side.is_proper_subset_of(&my_side) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closeness of S relative to a pool: no pool member has a strictly
/// smaller A-side, regardless of size. The pool is expected to be the
/// full size-bounded family the definition quantifies over (filtering an
/// important pool is equivalent, since inclusion-minimal sides belong to
/// important members).
pub fn is_close(
    g: &Graph,
    a: &VertexSet,
    _b: &VertexSet,
    _spec: &ConstraintSpec,
    s: &VertexSet,
    pool: &[VertexSet],
) -> Result<bool> {
    let my_side = g.component_of_set(s, a)?;
    for other in pool {
        if other == s {
            continue;
        }
        let side = g.component_of_set(other, a)?;
        if side.is_proper_subset_of(&my_side) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A family of nonempty sets, the input of minimal-hitting-set
/// enumeration.
#[derive(Debug, Clone)]
pub struct SetFamily {
    sets: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new(sets: Vec<VertexSet>) -> Result<Self> {
        if sets.iter().any(|s| s.is_empty()) {
            return Err(invalid("set family members must be nonempty"));
        }
        Ok(SetFamily { sets })
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn universe(&self) -> VertexSet {
        self.sets
            .iter()
            .fold(VertexSet::empty(), |acc, s| acc.union(s))
    }
}

/// A minimal hitting set together with, for each member, the index of a
/// family set witnessing its necessity (a set the member hits alone).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MhsEntry {
    pub set: VertexSet,
    pub witnesses: Vec<(usize, usize)>,
}

pub const DEFAULT_MHS_UNIVERSE_CAP: usize = 64;

/// All inclusion-minimal hitting sets of the family, in lexicographic
/// order of their sorted member lists. Exact subset enumeration over the
/// family's union; errors if the union exceeds `cap` elements.
pub fn enumerate_minimal_hitting_sets(family: &SetFamily, cap: usize) -> Result<Vec<MhsEntry>> {
    if family.sets().is_empty() {
        return Err(invalid("hitting-set family must be nonempty"));
    }
    let universe = family.universe();
    let u = universe.len();
    if u > cap || u > 63 {
        return Err(Error::ResourceLimit(format!(
            "hitting-set universe has {} elements (cap {})",
            u,
            cap.min(63)
        )));
    }
    let elems: Vec<usize> = universe.iter().collect();
    let set_masks: Vec<u64> = family
        .sets()
        .iter()
        .map(|s| {
            let mut m = 0u64;
            for (i, &e) in elems.iter().enumerate() {
                if s.contains(e) {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();

    // ascending numeric order visits every proper subset of a mask before
    // the mask itself, so minimality can be checked against prior hits
    let mut minimal_masks: Vec<u64> = Vec::new();
    for mask in 1u64..(1 << u) {
        if set_masks.iter().any(|&sm| sm & mask == 0) {
            continue;
        }
        if minimal_masks.iter().any(|&m| mask | m == mask) {
            continue;
        }
        minimal_masks.push(mask);
    }

    let mut entries: Vec<MhsEntry> = minimal_masks
        .into_iter()
        .map(|mask| {
            let set: VertexSet = elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let witnesses = set
                .iter()
                .map(|member| {
                    let bit = 1u64 << elems.iter().position(|&e| e == member).unwrap();
                    let idx = set_masks
                        .iter()
                        .position(|&sm| sm & mask == bit)
                        .expect("minimal hitting set member lacks a witness");
                    (member, idx)
                })
                .collect();
            MhsEntry { set, witnesses }
        })
        .collect();
    entries.sort_by(|x, y| x.set.cmp(&y.set));
    Ok(entries)
}

/// Verification record for a candidate separator under a constraint.
#[derive(Debug, Clone, Serialize)]
pub struct SeparatorCertificate {
    pub separator: Vec<usize>,
    pub is_separator: bool,
    pub is_minimal: bool,
    pub models_constraint: bool,
    pub size: usize,
    pub weight: u64,
}

pub fn certify(
    g: &Graph,
    spec: &ConstraintSpec,
    a: &VertexSet,
    b: &VertexSet,
    s: &VertexSet,
) -> Result<SeparatorCertificate> {
    g.check_set(s)?;
    let is_separator = g.separates(a, b, s)?;
    let is_minimal = is_minimal_separator(g, a, b, s)?;
    let models_constraint = constraints::evaluate(g, spec, s)?;
    Ok(SeparatorCertificate {
        separator: s.as_slice().to_vec(),
        is_separator,
        is_minimal,
        models_constraint,
        size: s.len(),
        weight: g.weight_of_set(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec())
    }

    fn path4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn minimal_separator_examples() {
        let g = path4();
        assert!(is_minimal_separator(&g, &vs(&[0]), &vs(&[3]), &vs(&[1])).unwrap());
        // {1,2} separates but 1 has no B-side witness once 2 is gone too
        assert!(!is_minimal_separator(&g, &vs(&[0]), &vs(&[3]), &vs(&[1, 2])).unwrap());
    }

    #[test]
    fn minimal_separator_matches_subset_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let budget = oracle::OracleBudget::default();
        let mut done = 0;
        while done < 60 {
            let n = rng.gen_range(4..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let (a, b) = (vs(&[0]), vs(&[n - 1]));
            if g.sets_adjacent(&a, &b).unwrap() {
                continue;
            }
            let s: VertexSet = (1..n - 1).filter(|_| rng.gen_bool(0.4)).collect();
            if !g.separates(&a, &b, &s).unwrap() {
                continue;
            }
            // minimal iff removing any single element breaks separation
            let brute_minimal = s.iter().all(|w| {
                let smaller = s.minus(&VertexSet::singleton(w));
                !g.separates(&a, &b, &smaller).unwrap()
            });
            assert_eq!(
                is_minimal_separator(&g, &a, &b, &s).unwrap(),
                brute_minimal,
                "S {:?} edges {:?}",
                s,
                edges
            );
            let _ = &budget;
            done += 1;
        }
    }

    #[test]
    fn minimalize_examples() {
        let g = path4();
        let m = minimalize(&g, &vs(&[0]), &vs(&[3]), &vs(&[1, 2])).unwrap();
        assert_eq!(m, vs(&[1]));
        assert_eq!(
            g.component_of_set(&m, &vs(&[0])).unwrap(),
            g.component_of_set(&vs(&[1, 2]), &vs(&[0])).unwrap()
        );

        // already minimal: identity
        let m = minimalize(&g, &vs(&[0]), &vs(&[3]), &vs(&[2])).unwrap();
        assert_eq!(m, vs(&[2]));

        // star with center 1: A = leaf 0, B = leaf 2, S = {1, leaf 3}
        let star = Graph::from_edges(4, &[(1, 0), (1, 2), (1, 3)]).unwrap();
        let m = minimalize(&star, &vs(&[0]), &vs(&[2]), &vs(&[1, 3])).unwrap();
        assert_eq!(m, vs(&[1]));

        // not a separator: error
        assert!(minimalize(&g, &vs(&[0]), &vs(&[3]), &vs(&[0])).is_err());
    }

    #[test]
    fn minimalize_output_is_minimal_and_contained() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut done = 0;
        while done < 80 {
            let n = rng.gen_range(4..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let (a, b) = (vs(&[0]), vs(&[n - 1]));
            let s: VertexSet = (1..n - 1).filter(|_| rng.gen_bool(0.5)).collect();
            if !g.separates(&a, &b, &s).unwrap() {
                continue;
            }
            let m = minimalize(&g, &a, &b, &s).unwrap();
            assert!(m.is_subset_of(&s));
            assert!(is_minimal_separator(&g, &a, &b, &m).unwrap());
            // A-side never shrinks
            let before = g.component_of_set(&s, &a).unwrap();
            let after = g.component_of_set(&m, &a).unwrap();
            assert!(before.is_subset_of(&after));
            done += 1;
        }
    }

    #[test]
    fn importance_on_path_pool() {
        let g = path4();
        let pool = vec![vs(&[1]), vs(&[2])];
        // C_s({1}) = {0} ⊂ C_s({2}) = {0,1}: {1} important, {2} not
        assert!(is_important(&g, &vs(&[0]), &vs(&[3]), &vs(&[1]), &pool).unwrap());
        assert!(!is_important(&g, &vs(&[0]), &vs(&[3]), &vs(&[2]), &pool).unwrap());
        // singleton pool
        assert!(is_important(&g, &vs(&[0]), &vs(&[3]), &vs(&[2]), &[vs(&[2])]).unwrap());
    }

    #[test]
    fn incomparable_sides_both_important_and_close() {
        // two disjoint s,t paths of length 3: the mixed cuts {1,4} and
        // {2,3} have incomparable source sides {0,3} and {0,1}
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        let s1 = vs(&[1, 4]);
        let s2 = vs(&[2, 3]);
        let pool = vec![s1.clone(), s2.clone()];
        let spec = ConstraintSpec::trivial();
        for s in [&s1, &s2] {
            assert!(is_important(&g, &vs(&[0]), &vs(&[5]), s, &pool).unwrap());
            assert!(is_close(&g, &vs(&[0]), &vs(&[5]), &spec, s, &pool).unwrap());
        }
        // {1,3} has source side {0}, dominating both mixed cuts
        let closest = vs(&[1, 3]);
        let pool3 = vec![s1.clone(), s2.clone(), closest.clone()];
        assert!(is_important(&g, &vs(&[0]), &vs(&[5]), &closest, &pool3).unwrap());
        assert!(!is_important(&g, &vs(&[0]), &vs(&[5]), &s1, &pool3).unwrap());
        assert!(!is_important(&g, &vs(&[0]), &vs(&[5]), &s2, &pool3).unwrap());
    }

    #[test]
    fn close_on_path_pool() {
        let g = path4();
        let spec = ConstraintSpec::trivial();
        let pool = vec![vs(&[1]), vs(&[2])];
        assert!(is_close(&g, &vs(&[0]), &vs(&[3]), &spec, &vs(&[1]), &pool).unwrap());
        assert!(!is_close(&g, &vs(&[0]), &vs(&[3]), &spec, &vs(&[2]), &pool).unwrap());
        assert!(is_close(&g, &vs(&[0]), &vs(&[3]), &spec, &vs(&[2]), &[vs(&[2])]).unwrap());
    }

    #[test]
    fn mhs_examples() {
        let fam = SetFamily::new(vec![vs(&[1, 2]), vs(&[2, 3])]).unwrap();
        let out = enumerate_minimal_hitting_sets(&fam, DEFAULT_MHS_UNIVERSE_CAP).unwrap();
        let sets: Vec<VertexSet> = out.iter().map(|e| e.set.clone()).collect();
        assert_eq!(sets, vec![vs(&[1, 3]), vs(&[2])]);

        let fam = SetFamily::new(vec![vs(&[1])]).unwrap();
        let out = enumerate_minimal_hitting_sets(&fam, DEFAULT_MHS_UNIVERSE_CAP).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].set, vs(&[1]));
    }

    #[test]
    fn mhs_witnesses_hold() {
        let fam = SetFamily::new(vec![vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4])]).unwrap();
        let out = enumerate_minimal_hitting_sets(&fam, DEFAULT_MHS_UNIVERSE_CAP).unwrap();
        for e in &out {
            for s in fam.sets() {
                assert!(!e.set.intersect(s).is_empty(), "not a hitting set");
            }
            for &(member, idx) in &e.witnesses {
                let hit = fam.sets()[idx].intersect(&e.set);
                assert_eq!(hit, vs(&[member]), "witness must be hit by the member alone");
            }
        }
    }

    #[test]
    fn mhs_matches_exhaustive_filter() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..60 {
            let u = rng.gen_range(1..=7usize);
            let m = rng.gen_range(1..=5usize);
            let mut sets = Vec::new();
            for _ in 0..m {
                let s: VertexSet = (0..u).filter(|_| rng.gen_bool(0.5)).collect();
                if s.is_empty() {
                    sets.push(vs(&[rng.gen_range(0..u)]));
                } else {
                    sets.push(s);
                }
            }
            let fam = SetFamily::new(sets.clone()).unwrap();
            let got: Vec<VertexSet> = enumerate_minimal_hitting_sets(&fam, 64)
                .unwrap()
                .into_iter()
                .map(|e| e.set)
                .collect();

            // exhaustive double-check over all subsets of 0..u
            let mut hitting: Vec<VertexSet> = Vec::new();
            for mask in 0u32..(1 << u) {
                let cand: VertexSet = (0..u).filter(|i| mask >> i & 1 == 1).collect();
                if sets.iter().all(|s| !s.intersect(&cand).is_empty()) {
                    hitting.push(cand);
                }
            }
            let mut want: Vec<VertexSet> = hitting
                .iter()
                .filter(|h| !hitting.iter().any(|o| o.is_proper_subset_of(h)))
                .cloned()
                .collect();
            want.sort();
            assert_eq!(got, want, "family {:?}", sets);
        }
    }

    #[test]
    fn mhs_count_bounded_by_universe_power() {
        let fam = SetFamily::new(vec![vs(&[0, 1]), vs(&[1, 2]), vs(&[0, 2])]).unwrap();
        let out = enumerate_minimal_hitting_sets(&fam, 64).unwrap();
        assert!(out.len() <= 1 << fam.universe().len());
    }

    #[test]
    fn mhs_cap_enforced() {
        let big: Vec<VertexSet> = (0..70).map(|i| vs(&[i, i + 1])).collect();
        let fam = SetFamily::new(big).unwrap();
        assert!(matches!(
            enumerate_minimal_hitting_sets(&fam, 64),
            Err(Error::ResourceLimit(_))
        ));
        let small = SetFamily::new(vec![vs(&[0, 1, 2, 3, 4])]).unwrap();
        assert!(enumerate_minimal_hitting_sets(&small, 3).is_err());
    }

    #[test]
    fn certificate_fields() {
        let g = path4();
        let spec = ConstraintSpec::trivial();
        let c = certify(&g, &spec, &vs(&[0]), &vs(&[3]), &vs(&[1])).unwrap();
        assert!(c.is_separator && c.is_minimal && c.models_constraint);
        assert_eq!((c.size, c.weight), (1, 1));
        let c = certify(&g, &spec, &vs(&[0]), &vs(&[3]), &VertexSet::empty()).unwrap();
        assert!(!c.is_separator);
        let c = certify(&g, &spec, &vs(&[0]), &vs(&[3]), &vs(&[1, 2])).unwrap();
        assert!(c.is_separator && !c.is_minimal);
    }
}
