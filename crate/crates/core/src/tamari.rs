//! The Grid-Tamari order on facets, its descents, canonical join
//! representations and congruences.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::biclosed::eta;
use crate::catalog::{Catalog, SegSet};
use crate::complexes::NonkissingComplex;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Poset};

/// Above this many facets the pairwise lattice check is skipped at build time.
pub const LATTICE_CHECK_LIMIT: usize = 2000;

#[derive(Clone, Debug)]
pub struct GridTamari {
    poset: Poset,
}

impl GridTamari {
    pub fn new(nk: &NonkissingComplex) -> Result<GridTamari> {
        let poset = Poset::from_covers(nk.num_facets(), nk.covers())?;
        if poset.minimal_elements() != [0] || poset.maximal_elements() != [poset.len() - 1] {
            return Err(Error::Invariant("Grid-Tamari order is not bounded".into()));
        }
        if poset.len() <= LATTICE_CHECK_LIMIT && !poset.is_lattice() {
            return Err(Error::Invariant("Grid-Tamari order is not a lattice".into()));
        }
        Ok(GridTamari { poset })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Tabulated lattice operations.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.poset.clone())
    }

    /// Labels of the covers below `f`.
    pub fn descents(&self, cat: &Catalog, f: usize) -> SegSet {
        cat.segset(self.poset.lower_covers(f).map(|c| c.label))
    }

    /// Labels of the covers above `f`.
    pub fn ascents(&self, cat: &Catalog, f: usize) -> SegSet {
        cat.segset(self.poset.upper_covers(f).map(|c| c.label))
    }
}

/// `η(A_s)`, the join-irreducible facet attached to segment `s`.
pub fn join_irreducible(cat: &Catalog, nk: &NonkissingComplex, s: usize) -> Result<usize> {
    let facet = eta(cat, cat.seg_sw(s))?;
    nk.facet_id(&facet)
        .ok_or_else(|| Error::Invariant("eta(A_s) is not a facet".into()))
}

/// `{η(A_s) : s ∈ Des(F)}`, as facet indices.
pub fn canonical_join_rep(
    cat: &Catalog,
    nk: &NonkissingComplex,
    gt: &GridTamari,
    f: usize,
) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = gt
        .descents(cat, f)
        .ones()
        .map(|s| join_irreducible(cat, nk, s))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Outcome of the congruence computation on a Grid-Tamari lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub congruences: usize,
    pub order_filters: usize,
    pub join_irreducibles: usize,
    pub segments: usize,
    /// `con(j_*, j)` is injective on join-irreducibles and `con(m, m^*)` on meet-irreducibles.
    pub uniform: bool,
    /// For each segment `s`, `con(j_*, j)` with `j = η(A_s)` contracts exactly
    /// the covers labelled by segments containing `s`.
    pub theta_by_containment: bool,
    /// Each congruence contracts exactly the covers whose labels form an
    /// order filter of segments under containment, and distinct congruences
    /// give distinct filters.
    pub filters_match: bool,
}

impl CongruenceReport {
    pub fn ok(&self) -> bool {
        self.uniform
            && self.theta_by_containment
            && self.filters_match
            && self.congruences == self.order_filters
            && self.join_irreducibles == self.segments
    }
}

/// Number of order filters of segments under containment.
pub fn count_containment_filters(cat: &Catalog) -> u128 {
    let mut order: Vec<usize> = (0..cat.num_segments()).collect();
    order.sort_by_key(|&s| std::cmp::Reverse(cat.segment(s).len()));
    fn go(cat: &Catalog, order: &[usize], k: usize, chosen: &mut SegSet) -> u128 {
        if k == order.len() {
            return 1;
        }
        let s = order[k];
        let mut total = go(cat, order, k + 1, chosen);
        let supersets_in = (0..cat.num_segments()).all(|t| t == s || !cat.contains(t, s) || chosen.contains(t));
        if supersets_in {
            chosen.insert(s);
            total += go(cat, order, k + 1, chosen);
            chosen.remove(s);
        }
        total
    }
    go(cat, &order, 0, &mut cat.empty_segset())
}

pub fn congruence_lattice(
    cat: &Catalog,
    nk: &NonkissingComplex,
    lattice: &Lattice,
) -> Result<CongruenceReport> {
    let covers = lattice.poset().covers();
    let labels_of = |theta: &FixedBitSet| -> SegSet { cat.segset(theta.ones().map(|k| covers[k].label)) };
    let by_labels = |labels: &SegSet| -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(covers.len());
        out.extend((0..covers.len()).filter(|&k| labels.contains(covers[k].label)));
        out
    };

    let jis = lattice.join_irreducibles();
    let mis = lattice.meet_irreducibles();
    let ji_cons: BTreeSet<FixedBitSet> = jis.iter().map(|&j| lattice.con_join_irreducible(j)).collect();
    let mi_cons: BTreeSet<FixedBitSet> = mis.iter().map(|&m| lattice.con_meet_irreducible(m)).collect();
    let uniform = ji_cons.len() == jis.len() && mi_cons.len() == mis.len() && ji_cons == mi_cons;

    let mut theta_by_containment = true;
    for s in 0..cat.num_segments() {
        let j = join_irreducible(cat, nk, s)?;
        let mut lower = lattice.poset().lower_covers(j);
        let single = lower.next().filter(|c| c.label == s && lower.next().is_none());
        if single.is_none() {
            theta_by_containment = false;
            continue;
        }
        let supersets = cat.segset((0..cat.num_segments()).filter(|&t| cat.contains(t, s)));
        if lattice.con_join_irreducible(j) != by_labels(&supersets) {
            theta_by_containment = false;
        }
    }

    let all = lattice.all_congruences();
    let mut filters = BTreeSet::new();
    let mut filters_match = true;
    for theta in &all {
        let labels = labels_of(theta);
        let up_closed = labels
            .ones()
            .all(|s| (0..cat.num_segments()).all(|t| !cat.contains(t, s) || labels.contains(t)));
        filters_match &= up_closed && by_labels(&labels) == *theta;
        filters.insert(labels);
    }
    filters_match &= filters.len() == all.len();

    Ok(CongruenceReport {
        congruences: all.len(),
        order_filters: count_containment_filters(cat) as usize,
        join_irreducibles: jis.len(),
        segments: cat.num_segments(),
        uniform,
        theta_by_containment,
        filters_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Shape;

    fn build(k: u32, m: u32) -> (Catalog, NonkissingComplex, GridTamari) {
        let cat = Catalog::new(&Shape::rect(k, m).unwrap());
        let nk = NonkissingComplex::new(&cat).unwrap();
        let gt = GridTamari::new(&nk).unwrap();
        (cat, nk, gt)
    }

    #[test]
    fn small_orders() {
        let (_, _, gt) = build(2, 2);
        assert_eq!(gt.len(), 2);
        assert_eq!(gt.poset().covers().len(), 1);
        let (cat, _, gt) = build(2, 3);
        assert_eq!(gt.len(), 5);
        assert_eq!(gt.poset().covers().len(), 5);
        assert!(gt.descents(&cat, 0).is_clear());
        assert_eq!(gt.poset().lower_covers(gt.top()).count(), 2);
        let (_, _, gt) = build(2, 4);
        assert_eq!(gt.len(), 14);
    }

    #[test]
    fn pentagon_congruences() {
        let (cat, nk, gt) = build(2, 3);
        let report = congruence_lattice(&cat, &nk, &gt.lattice().unwrap()).unwrap();
        assert_eq!(report.congruences, 5);
        assert_eq!(report.order_filters, 5);
        assert!(report.ok(), "{report:?}");
        let (cat, nk, gt) = build(2, 2);
        let report = congruence_lattice(&cat, &nk, &gt.lattice().unwrap()).unwrap();
        assert_eq!(report.congruences, 2);
        assert!(report.ok());
    }

    #[test]
    fn canonical_join_rep_examples() {
        let (cat, nk, gt) = build(2, 3);
        assert!(canonical_join_rep(&cat, &nk, &gt, 0).unwrap().is_empty());
        let lattice = gt.lattice().unwrap();
        for j in lattice.join_irreducibles() {
            assert_eq!(canonical_join_rep(&cat, &nk, &gt, j).unwrap(), vec![j]);
        }
    }
}
