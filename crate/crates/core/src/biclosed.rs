//! Closed and biclosed sets of segments, and the maps between biclosed sets
//! and facets of the reduced nonkissing complex.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::catalog::{Catalog, SegSet};
use crate::error::{Error, Result};
use crate::paths::{Path, Segment};
use crate::shape::Vertex;

/// Smallest superset of `x` closed under concatenation.
pub fn closure(cat: &Catalog, x: &SegSet) -> SegSet {
    let mut out = x.clone();
    loop {
        let mut changed = false;
        for &(s, t, u) in cat.concatenations() {
            if out.contains(s) && out.contains(t) && !out.contains(u) {
                out.insert(u);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

pub fn is_closed(cat: &Catalog, x: &SegSet) -> bool {
    cat.concatenations()
        .iter()
        .all(|&(s, t, u)| !(x.contains(s) && x.contains(t)) || x.contains(u))
}

pub fn complement(cat: &Catalog, x: &SegSet) -> SegSet {
    let mut c = cat.full_segset();
    c.difference_with(x);
    c
}

pub fn is_biclosed(cat: &Catalog, x: &SegSet) -> bool {
    is_closed(cat, x) && is_closed(cat, &complement(cat, x))
}

/// All biclosed sets, grouped by size and sorted within each size.
///
/// Built rank by rank: every biclosed set of size `k + 1` contains a biclosed
/// set of size `k`.
pub fn enumerate_biclosed(cat: &Catalog) -> Vec<SegSet> {
    let mut all = Vec::new();
    let mut layer: BTreeSet<SegSet> = BTreeSet::from([cat.empty_segset()]);
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for x in &layer {
            for s in 0..cat.num_segments() {
                if x.contains(s) {
                    continue;
                }
                let mut y = x.clone();
                y.insert(s);
                if is_biclosed(cat, &y) {
                    next.insert(y);
                }
            }
        }
        all.extend(std::mem::take(&mut layer));
        layer = next;
    }
    all
}

pub fn bic_join(cat: &Catalog, x: &SegSet, y: &SegSet) -> SegSet {
    let mut u = x.clone();
    u.union_with(y);
    closure(cat, &u)
}

/// `(X^c ∨ Y^c)^c`.
pub fn bic_meet(cat: &Catalog, x: &SegSet, y: &SegSet) -> SegSet {
    complement(cat, &bic_join(cat, &complement(cat, x), &complement(cat, y)))
}

fn lookup(cat: &Catalog, run: &[Vertex]) -> usize {
    cat.segment_id(&Segment::from_run(run)).expect("run of interior vertices is a segment")
}

/// The path built through the vertical edge `top → top.south()`, steered by `x`.
fn eta_path(cat: &Catalog, x: &SegSet, top: Vertex) -> Vec<Vertex> {
    let shape = cat.shape();
    let mut back = vec![top];
    while shape.is_interior(back[0]) {
        let run: Vec<Vertex> = back.clone();
        let first = back[0];
        let pred = if x.contains(lookup(cat, &run)) { first.north() } else { first.west() };
        back.insert(0, pred);
    }
    let mut fwd = vec![top.south()];
    while shape.is_interior(*fwd.last().unwrap()) {
        let last = *fwd.last().unwrap();
        let succ = if x.contains(lookup(cat, &fwd)) { last.east() } else { last.south() };
        fwd.push(succ);
    }
    back.extend(fwd);
    back
}

/// `η(X)`: one path per vertical edge, vertical paths dropped.
pub fn eta(cat: &Catalog, x: &SegSet) -> Result<FixedBitSet> {
    let shape = cat.shape();
    let mut facet = FixedBitSet::with_capacity(cat.num_paths());
    for top in shape.vertices().filter(|&v| shape.contains(v.south())) {
        let walk = eta_path(cat, x, top);
        let path = Path::new(shape, walk).map_err(|e| Error::Invariant(format!("eta built a non-path: {e}")))?;
        if path.is_vertical() {
            continue;
        }
        let id = cat
            .path_id(&path)
            .ok_or_else(|| Error::Invariant("eta built a cone path".into()))?;
        facet.insert(id);
    }
    if facet.count_ones(..) != cat.rank() {
        return Err(Error::Invariant(format!(
            "eta produced {} paths, expected {}",
            facet.count_ones(..),
            cat.rank()
        )));
    }
    Ok(facet)
}

/// `φ(F)`: the biclosed join of `A_p` over `p ∈ F`.
pub fn phi(cat: &Catalog, facet: &FixedBitSet) -> SegSet {
    let mut u = cat.empty_segset();
    for p in facet.ones() {
        u.union_with(cat.path_sw(p));
    }
    closure(cat, &u)
}

/// `X^↓ = {s ∈ X : A_s ⊆ X}`.
pub fn down_projection(cat: &Catalog, x: &SegSet) -> SegSet {
    let mut out = cat.empty_segset();
    for s in x.ones() {
        if cat.seg_sw(s).is_subset(x) {
            out.insert(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::initial_facet;
    use crate::shape::Shape;

    fn subset_filter(cat: &Catalog) -> BTreeSet<SegSet> {
        let n = cat.num_segments();
        (0u32..1 << n)
            .map(|mask| cat.segset((0..n).filter(|&k| mask & (1 << k) != 0)))
            .filter(|x| is_biclosed(cat, x))
            .collect()
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        for (k, m) in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5)] {
            let cat = Catalog::new(&Shape::rect(k, m).unwrap());
            let ranked: BTreeSet<SegSet> = enumerate_biclosed(&cat).into_iter().collect();
            assert_eq!(ranked, subset_filter(&cat));
        }
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        assert_eq!(enumerate_biclosed(&cat).len(), 6);
        let cat = Catalog::new(&Shape::rect(2, 2).unwrap());
        assert_eq!(enumerate_biclosed(&cat).len(), 2);
    }

    #[test]
    fn rect23_examples() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        let s1 = cat.segment_id(&Segment::lazy(Vertex::new(1, 1))).unwrap();
        let s2 = cat.segment_id(&Segment::lazy(Vertex::new(2, 1))).unwrap();
        let all = cat.full_segset();
        let pair = cat.segset([s1, s2]);
        assert_eq!(closure(&cat, &pair), all);
        assert_eq!(bic_join(&cat, &cat.segset([s1]), &cat.segset([s2])), all);
        assert_eq!(closure(&cat, &cat.empty_segset()), cat.empty_segset());
        let s12 = (0..3).find(|&k| k != s1 && k != s2).unwrap();
        assert_eq!(down_projection(&cat, &cat.segset([s12])), cat.empty_segset());
    }

    #[test]
    fn eta_extremes() {
        for (k, m) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
            let cat = Catalog::new(&Shape::rect(k, m).unwrap());
            let bottom = eta(&cat, &cat.empty_segset()).unwrap();
            assert_eq!(bottom, initial_facet(&cat));
            assert_eq!(phi(&cat, &bottom), cat.empty_segset());
            let top = eta(&cat, &cat.full_segset()).unwrap();
            assert_eq!(phi(&cat, &top), cat.full_segset());
        }
    }
}
