//! Wide sets of segments, the lattice `Ψ^w` of wide sets, and the
//! lattice-theoretic shard order `Ψ^l` read off the Grid-Tamari lattice.

use std::collections::HashMap;

use crate::biclosed::closure;
use crate::catalog::{Catalog, SegSet};
use crate::complexes::CompatGraph;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Poset};
use crate::paths::{Segment, Walk};

/// The triples, friendliness witnesses and three-way splits that the
/// wideness conditions quantify over, precomputed for one catalog.
#[derive(Clone, Debug)]
pub struct WideRules {
    /// `(s, t, u)` with `s∘t = u`.
    concatenations: Vec<(usize, usize, usize)>,
    /// For `s < t` friendly: every `u` in `(K_s ∩ A_t) ∪ (A_s ∩ K_t)`.
    friendly: Vec<(usize, usize, SegSet)>,
    /// `(s, s1, s2, s3)` with `s = s1∘s2∘s3` and `s2 ∈ A_s ∪ K_s`.
    splits: Vec<(usize, usize, usize, usize)>,
}

impl WideRules {
    pub fn new(cat: &Catalog) -> WideRules {
        let mut friendly = Vec::new();
        for s in 0..cat.num_segments() {
            for t in s + 1..cat.num_segments() {
                let mut a = cat.seg_ne(s).clone();
                a.intersect_with(cat.seg_sw(t));
                let mut b = cat.seg_sw(s).clone();
                b.intersect_with(cat.seg_ne(t));
                a.union_with(&b);
                if !a.is_clear() {
                    friendly.push((s, t, a));
                }
            }
        }
        let id = |run: &[crate::shape::Vertex]| cat.segment_id(&Segment::from_run(run)).expect("subrun is a segment");
        let mut splits = Vec::new();
        for s in 0..cat.num_segments() {
            let v = cat.segment(s).vertices();
            for a in 1..v.len() {
                for b in a..v.len() - 1 {
                    let s2 = id(&v[a..=b]);
                    if cat.seg_sw(s).contains(s2) || cat.seg_ne(s).contains(s2) {
                        splits.push((s, id(&v[..a]), s2, id(&v[b + 1..])));
                    }
                }
            }
        }
        WideRules {
            concatenations: cat.concatenations().to_vec(),
            friendly,
            splits,
        }
    }

    pub fn friendly(&self) -> &[(usize, usize, SegSet)] {
        &self.friendly
    }

    pub fn splits(&self) -> &[(usize, usize, usize, usize)] {
        &self.splits
    }

    pub fn is_wide(&self, t: &SegSet) -> bool {
        let first = self
            .concatenations
            .iter()
            .all(|&(s, u, v)| [s, u, v].iter().filter(|&&k| t.contains(k)).count() != 2);
        let second = self
            .friendly
            .iter()
            .all(|(s, u, along)| !(t.contains(*s) && t.contains(*u)) || along.is_subset(t));
        let third = self
            .splits
            .iter()
            .all(|&(s, s1, s2, s3)| !(t.contains(s) && t.contains(s2)) || (t.contains(s1) && t.contains(s3)));
        first && second && third
    }
}

pub fn is_wide(cat: &Catalog, t: &SegSet) -> bool {
    WideRules::new(cat).is_wide(t)
}

/// `NF(T) = {s ∈ T : A_s ∩ T = {s} = K_s ∩ T}`.
pub fn nf(cat: &Catalog, t: &SegSet) -> SegSet {
    let mut out = cat.empty_segset();
    for s in t.ones() {
        let single = |side: &SegSet| {
            let mut both = side.clone();
            both.intersect_with(t);
            both.count_ones(..) == 1
        };
        if single(cat.seg_sw(s)) && single(cat.seg_ne(s)) {
            out.insert(s);
        }
    }
    out
}

/// The closure of a nonfriendly set, checked to be wide with `NF` recovering the input.
pub fn wide_closure(cat: &Catalog, rules: &WideRules, x: &SegSet) -> Result<SegSet> {
    let nf_graph = CompatGraph::nonfriendly(cat);
    if !nf_graph.is_face(x) {
        return Err(Error::Invariant("input is not a nonfriendly set".into()));
    }
    let t = closure(cat, x);
    if !rules.is_wide(&t) {
        return Err(Error::Invariant("closure of a nonfriendly set is not wide".into()));
    }
    if nf(cat, &t) != *x {
        return Err(Error::Invariant("NF does not invert the closure".into()));
    }
    Ok(t)
}

/// `Ψ^w`: wide sets ordered by inclusion, indexed by increasing size.
#[derive(Clone, Debug)]
pub struct WideLattice {
    sets: Vec<SegSet>,
    index: HashMap<SegSet, usize>,
    rank: Vec<usize>,
    poset: Poset,
}

impl WideLattice {
    pub fn new(cat: &Catalog) -> Result<WideLattice> {
        let rules = WideRules::new(cat);
        let graph = CompatGraph::nonfriendly(cat);
        let mut pairs = Vec::new();
        for face in graph.faces() {
            let t = wide_closure(cat, &rules, &face)?;
            pairs.push((t.count_ones(..), t.ones().collect::<Vec<_>>(), t, face.count_ones(..)));
        }
        pairs.sort();
        let n = pairs.len();
        let sets: Vec<SegSet> = pairs.iter().map(|p| p.2.clone()).collect();
        let rank: Vec<usize> = pairs.iter().map(|p| p.3).collect();
        let index: HashMap<SegSet, usize> = sets.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        if index.len() != n {
            return Err(Error::Invariant("two nonfriendly faces have the same closure".into()));
        }
        let poset = Poset::from_relation(n, |a, b| sets[a].is_subset(&sets[b]))?;
        if poset.heights() != rank {
            return Err(Error::Invariant("longest-chain rank differs from |NF(T)|".into()));
        }
        if poset.covers().iter().any(|c| rank[c.upper] != rank[c.lower] + 1) {
            return Err(Error::Invariant("wide sets are not graded".into()));
        }
        Ok(WideLattice {
            sets,
            index,
            rank,
            poset,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[SegSet] {
        &self.sets
    }

    pub fn index_of(&self, t: &SegSet) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `rk(T) = |NF(T)|`.
    pub fn rank(&self, k: usize) -> usize {
        self.rank[k]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Number of wide sets of each rank.
    pub fn rank_generating(&self) -> Vec<u128> {
        let top = self.rank.iter().copied().max().unwrap_or(0);
        let mut out = vec![0u128; top + 1];
        for &r in &self.rank {
            out[r] += 1;
        }
        out
    }

    /// `μ(Y, X)` over the inclusion order.
    pub fn mobius(&self, y: usize, x: usize) -> Result<i64> {
        if !self.poset.le(y, x) {
            return Err(Error::Invariant("Möbius function of an incomparable pair".into()));
        }
        Ok(self.poset.mobius_from(y)[x])
    }

    /// `m[i][j] = Σ μ(Y, X)` over `Y ⊆ X` with `rk X = i` and `rk Y = j`.
    pub fn m_matrix(&self) -> Vec<Vec<i128>> {
        let r = self.rank.iter().copied().max().unwrap_or(0);
        let mut m = vec![vec![0i128; r + 1]; r + 1];
        for y in 0..self.len() {
            let mu = self.poset.mobius_from(y);
            for x in self.poset.up_set(y).ones() {
                let cell = &mut m[self.rank[x]][self.rank[y]];
                *cell = cell.checked_add(mu[x] as i128).expect("M-triangle overflow");
            }
        }
        m
    }
}

/// `ψ(F)`: labels of covers inside `[⋀ lower covers of F, F]`.
pub fn psi_l(cat: &Catalog, lattice: &Lattice, f: usize) -> SegSet {
    let poset = lattice.poset();
    let bottom = lattice.meet_all(poset.lower_covers(f).map(|c| c.lower).chain([f]));
    cat.segset(
        poset
            .covers()
            .iter()
            .filter(|c| poset.le(bottom, c.lower) && poset.le(c.upper, f))
            .map(|c| c.label),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{Shape, Vertex};

    fn seg(cat: &Catalog, pts: &[(i32, i32)]) -> usize {
        let run: Vec<Vertex> = pts.iter().map(|&(x, y)| Vertex::new(x, y)).collect();
        cat.segment_id(&Segment::from_run(&run)).unwrap()
    }

    #[test]
    fn rect23_examples() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        let rules = WideRules::new(&cat);
        let s1 = seg(&cat, &[(1, 1)]);
        let s2 = seg(&cat, &[(2, 1)]);
        let s12 = seg(&cat, &[(1, 1), (2, 1)]);
        assert!(!rules.is_wide(&cat.segset([s1, s2])));
        assert!(rules.is_wide(&cat.segset([s1, s2, s12])));
        assert!(rules.is_wide(&cat.empty_segset()));
        assert_eq!(nf(&cat, &cat.segset([s1, s2, s12])), cat.segset([s1, s2]));
        assert_eq!(nf(&cat, &cat.segset([s12])), cat.segset([s12]));
        assert_eq!(wide_closure(&cat, &rules, &cat.segset([s1, s2])).unwrap(), cat.segset([s1, s2, s12]));
        assert_eq!(wide_closure(&cat, &rules, &cat.segset([s12])).unwrap(), cat.segset([s12]));

        let w = WideLattice::new(&cat).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.ranks(), &[0, 1, 1, 1, 2]);
        assert_eq!(w.mobius(0, 4).unwrap(), 2);
        assert_eq!(w.mobius(2, 2).unwrap(), 1);
        assert_eq!(w.m_matrix(), vec![vec![1, 0, 0], vec![-3, 3, 0], vec![2, -3, 1]]);
    }

    #[test]
    fn rect22_is_a_chain() {
        let cat = Catalog::new(&Shape::rect(2, 2).unwrap());
        let w = WideLattice::new(&cat).unwrap();
        assert_eq!(w.ranks(), &[0, 1]);
    }
}
