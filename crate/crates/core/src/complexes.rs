//! The reduced nonkissing complex, found by flips from the initial facet, and
//! the nonfriendly complex. Both are flag complexes of a compatibility graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::catalog::{Catalog, SegSet};
use crate::error::{Error, Result};
use crate::lattice::Cover;

/// Pairwise compatibility on a ground set; faces are its cliques.
#[derive(Clone, Debug)]
pub struct CompatGraph {
    adj: Vec<FixedBitSet>,
}

impl CompatGraph {
    pub fn from_predicate(n: usize, compatible: impl Fn(usize, usize) -> bool) -> CompatGraph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if compatible(a, b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        CompatGraph { adj }
    }

    /// Pairwise nonkissing non-cone paths.
    pub fn nonkissing(cat: &Catalog) -> CompatGraph {
        CompatGraph::from_predicate(cat.num_paths(), |p, q| !cat.paths_kiss(p, q))
    }

    /// Pairwise nonfriendly segments.
    pub fn nonfriendly(cat: &Catalog) -> CompatGraph {
        CompatGraph::from_predicate(cat.num_segments(), |s, t| !cat.segments_friendly(s, t))
    }

    pub fn ground_size(&self) -> usize {
        self.adj.len()
    }

    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbours(&self, a: usize) -> &FixedBitSet {
        &self.adj[a]
    }

    pub fn is_face(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|a| set.ones().all(|b| a == b || self.adj[a].contains(b)))
    }

    /// Every face, depth first, in lexicographic order of member lists.
    pub fn faces(&self) -> Faces<'_> {
        let n = self.ground_size();
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        Faces {
            graph: self,
            stack: vec![(FixedBitSet::with_capacity(n), all)],
        }
    }

    /// Number of faces of each size.
    pub fn f_vector(&self) -> Vec<u128> {
        let mut f = Vec::new();
        for face in self.faces() {
            let k = face.count_ones(..);
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        }
        f
    }
}

pub struct Faces<'a> {
    graph: &'a CompatGraph,
    stack: Vec<(FixedBitSet, FixedBitSet)>,
}

impl Iterator for Faces<'_> {
    type Item = FixedBitSet;

    fn next(&mut self) -> Option<FixedBitSet> {
        let (face, candidates) = self.stack.pop()?;
        let members: Vec<usize> = candidates.ones().collect();
        for &c in members.iter().rev() {
            let mut child = face.clone();
            child.insert(c);
            let mut rest = candidates.clone();
            rest.intersect_with(&self.graph.adj[c]);
            rest.remove_range(..c + 1);
            self.stack.push((child, rest));
        }
        Some(face)
    }
}

/// A flip across the ridge `facet ∖ {removed}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flip {
    pub facet: FixedBitSet,
    pub removed: usize,
    pub added: usize,
    pub label: usize,
    /// The flip goes up in the Grid-Tamari order: `removed` enters `label`
    /// from the West and leaves South.
    pub upward: bool,
}

/// The set of initial paths.
pub fn initial_facet(cat: &Catalog) -> FixedBitSet {
    let mut f = FixedBitSet::with_capacity(cat.num_paths());
    f.extend(cat.initial_paths().iter().copied());
    f
}

/// Replace `p` in `facet` by the unique other path completing the ridge.
pub fn flip(cat: &Catalog, graph: &CompatGraph, facet: &FixedBitSet, p: usize) -> Result<Flip> {
    if !facet.contains(p) {
        return Err(Error::Invariant("flipped path is not in the facet".into()));
    }
    let mut candidates = FixedBitSet::with_capacity(cat.num_paths());
    candidates.insert_range(..);
    for q in facet.ones().filter(|&q| q != p) {
        candidates.intersect_with(graph.neighbours(q));
    }
    candidates.remove(p);
    let completions: Vec<usize> = candidates.ones().collect();
    let [q] = completions[..] else {
        return Err(Error::Invariant(format!(
            "ridge lies in {} facets besides the flipped one",
            completions.len()
        )));
    };
    let (label, p_west_south) = cat
        .kiss_label(p, q)
        .ok_or_else(|| Error::Invariant("flipped paths do not kiss along a unique segment".into()))?;
    let mut target = facet.clone();
    target.remove(p);
    target.insert(q);
    Ok(Flip {
        facet: target,
        removed: p,
        added: q,
        label,
        upward: p_west_south,
    })
}

/// A directed flip between indexed facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipEdge {
    pub source: usize,
    pub target: usize,
    pub removed: usize,
    pub added: usize,
    pub label: usize,
}

/// Facets of the reduced nonkissing complex and its flip graph.
#[derive(Clone, Debug)]
pub struct NonkissingComplex {
    graph: CompatGraph,
    /// Indexed by a linear extension of the Grid-Tamari order; `0` is the initial facet.
    facets: Vec<FixedBitSet>,
    facet_index: HashMap<FixedBitSet, usize>,
    /// Upward flips.
    flips: Vec<FlipEdge>,
    /// `neighbour[f]` maps each member path to the facet across that ridge.
    neighbour: Vec<Vec<(usize, usize)>>,
}

impl NonkissingComplex {
    pub fn new(cat: &Catalog) -> Result<NonkissingComplex> {
        let graph = CompatGraph::nonkissing(cat);
        let start = initial_facet(cat);
        if !graph.is_face(&start) {
            return Err(Error::Invariant("initial paths are not pairwise nonkissing".into()));
        }
        let mut found: Vec<FixedBitSet> = vec![start.clone()];
        let mut index: HashMap<FixedBitSet, usize> = HashMap::from([(start, 0)]);
        let mut raw_flips = Vec::new();
        let mut raw_neighbour: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            let facet = found[f].clone();
            let mut around = Vec::new();
            for p in facet.ones() {
                let fl = flip(cat, &graph, &facet, p)?;
                let g = match index.get(&fl.facet) {
                    Some(&g) => g,
                    None => {
                        let g = found.len();
                        index.insert(fl.facet.clone(), g);
                        found.push(fl.facet.clone());
                        queue.push_back(g);
                        g
                    }
                };
                around.push((p, g));
                if fl.upward {
                    raw_flips.push(FlipEdge {
                        source: f,
                        target: g,
                        removed: p,
                        added: fl.added,
                        label: fl.label,
                    });
                }
            }
            if raw_neighbour.len() <= f {
                raw_neighbour.resize(f + 1, Vec::new());
            }
            raw_neighbour[f] = around;
        }
        for facet in &found {
            if facet.count_ones(..) != cat.rank() {
                return Err(Error::Invariant("facet size differs from the interior count".into()));
            }
        }

        // Renumber along a deterministic linear extension of the flip order.
        let n = found.len();
        let keys: Vec<Vec<usize>> = found.iter().map(|f| f.ones().collect()).collect();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &raw_flips {
            indegree[e.target] += 1;
            out[e.source].push(e.target);
        }
        let mut heap: BinaryHeap<Reverse<(&Vec<usize>, usize)>> = (0..n)
            .filter(|&f| indegree[f] == 0)
            .map(|f| Reverse((&keys[f], f)))
            .collect();
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        while let Some(Reverse((_, f))) = heap.pop() {
            new_id[f] = next;
            next += 1;
            for &g in &out[f] {
                indegree[g] -= 1;
                if indegree[g] == 0 {
                    heap.push(Reverse((&keys[g], g)));
                }
            }
        }
        if next != n {
            return Err(Error::Invariant("flip order has a cycle".into()));
        }
        if new_id[0] != 0 {
            return Err(Error::Invariant("initial facet is not the unique minimum".into()));
        }
        let mut facets = vec![FixedBitSet::new(); n];
        let mut neighbour = vec![Vec::new(); n];
        for f in 0..n {
            facets[new_id[f]] = found[f].clone();
            neighbour[new_id[f]] = raw_neighbour[f].iter().map(|&(p, g)| (p, new_id[g])).collect();
        }
        let mut flips: Vec<FlipEdge> = raw_flips
            .into_iter()
            .map(|e| FlipEdge {
                source: new_id[e.source],
                target: new_id[e.target],
                ..e
            })
            .collect();
        flips.sort_by_key(|e| (e.source, e.target));
        let facet_index = facets.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect();
        Ok(NonkissingComplex {
            graph,
            facets,
            facet_index,
            flips,
            neighbour,
        })
    }

    pub fn graph(&self) -> &CompatGraph {
        &self.graph
    }

    pub fn facets(&self) -> &[FixedBitSet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet(&self, k: usize) -> &FixedBitSet {
        &self.facets[k]
    }

    pub fn facet_id(&self, f: &FixedBitSet) -> Option<usize> {
        self.facet_index.get(f).copied()
    }

    pub fn flips(&self) -> &[FlipEdge] {
        &self.flips
    }

    /// Cover relations of the Grid-Tamari order, labelled by segment index.
    pub fn covers(&self) -> Vec<Cover> {
        self.flips
            .iter()
            .map(|e| Cover {
                lower: e.source,
                upper: e.target,
                label: e.label,
            })
            .collect()
    }

    /// The facet across the ridge `facet ∖ {p}`.
    pub fn neighbour(&self, facet: usize, p: usize) -> Option<usize> {
        self.neighbour[facet].iter().find(|&&(q, _)| q == p).map(|&(_, g)| g)
    }

    /// Number of faces of each size.
    pub fn f_vector(&self) -> Vec<u128> {
        self.graph.f_vector()
    }

    /// Checks that `order` is a shelling and returns the restriction size of each facet in order.
    pub fn shelling_restrictions(&self, order: &[usize]) -> Result<Vec<usize>> {
        let n = self.num_facets();
        let mut position = vec![usize::MAX; n];
        for (k, &f) in order.iter().enumerate() {
            position[f] = k;
        }
        if order.len() != n || position.contains(&usize::MAX) {
            return Err(Error::Invariant("shelling order is not a permutation of the facets".into()));
        }
        let mut sizes = Vec::with_capacity(n);
        for (j, &f) in order.iter().enumerate() {
            let mut restriction = FixedBitSet::with_capacity(self.graph.ground_size());
            for &(p, g) in &self.neighbour[f] {
                if position[g] < j {
                    restriction.insert(p);
                }
            }
            for &earlier in &order[..j] {
                if restriction.is_subset(&self.facets[earlier]) {
                    return Err(Error::Invariant(format!(
                        "facet {f} at position {j} violates the shelling condition"
                    )));
                }
            }
            sizes.push(restriction.count_ones(..));
        }
        Ok(sizes)
    }
}

/// Lazy members of a nonfriendly face contained in no other member.
pub fn isolated_lazy(cat: &Catalog, face: &SegSet) -> SegSet {
    let mut out = cat.empty_segset();
    for s in face.ones().filter(|&s| cat.segment(s).is_lazy()) {
        if face.ones().all(|t| t == s || !cat.contains(t, s)) {
            out.insert(s);
        }
    }
    out
}

/// `h` from `f` for a pure complex of dimension `r − 1`:
/// `Σ_i f_{i−1} (t − 1)^{r−i} = Σ_i h_i t^{r−i}`, returned as `[h_0, …, h_r]`.
pub fn h_from_f(f: &[u128], r: usize) -> Vec<i128> {
    let mut h = vec![0i128; r + 1];
    for (i, &count) in f.iter().enumerate().take(r + 1) {
        // (t − 1)^{r−i} = Σ_k C(r−i, k) t^k (−1)^{r−i−k}; t^k contributes to h_{r−k}.
        let e = r - i;
        let mut binom: i128 = 1;
        for k in 0..=e {
            let sign = if (e - k).is_multiple_of(2) { 1 } else { -1 };
            h[r - k] += sign * binom * count as i128;
            binom = binom * (e - k) as i128 / (k + 1) as i128;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Shape;

    fn complex(k: u32, m: u32) -> (Catalog, NonkissingComplex) {
        let cat = Catalog::new(&Shape::rect(k, m).unwrap());
        let nk = NonkissingComplex::new(&cat).unwrap();
        (cat, nk)
    }

    #[test]
    fn facet_counts() {
        assert_eq!(complex(2, 2).1.num_facets(), 2);
        assert_eq!(complex(2, 3).1.num_facets(), 5);
        assert_eq!(complex(2, 4).1.num_facets(), 14);
        assert_eq!(complex(3, 4).1.num_facets(), 462);
        assert_eq!(complex(1, 3).1.num_facets(), 1);
    }

    #[test]
    fn rect23_vectors() {
        let (cat, nk) = complex(2, 3);
        let f = nk.f_vector();
        assert_eq!(f, vec![1, 5, 5]);
        assert_eq!(h_from_f(&f, cat.rank()), vec![1, 3, 1]);
        assert_eq!(nk.flips().iter().filter(|e| e.source == 0).count(), 2);
        let nf = CompatGraph::nonfriendly(&cat);
        assert_eq!(nf.f_vector(), vec![1, 3, 1]);
    }

    #[test]
    fn rect22_flip() {
        let (cat, nk) = complex(2, 2);
        let f0 = initial_facet(&cat);
        let p = f0.ones().next().unwrap();
        let fl = flip(&cat, nk.graph(), &f0, p).unwrap();
        assert!(fl.upward);
        assert!(cat.segment(fl.label).is_lazy());
        let back = flip(&cat, nk.graph(), &fl.facet, fl.added).unwrap();
        assert_eq!(back.facet, f0);
        assert_eq!(back.added, p);
        assert_eq!(back.label, fl.label);
        assert!(!back.upward);
    }

    #[test]
    fn empty_interior() {
        let (cat, nk) = complex(1, 4);
        assert_eq!(nk.f_vector(), vec![1]);
        assert_eq!(h_from_f(&nk.f_vector(), cat.rank()), vec![1]);
        assert_eq!(CompatGraph::nonfriendly(&cat).faces().count(), 1);
    }

    #[test]
    fn isolated_lazy_examples() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        let s1 = cat.segment_id(&crate::paths::Segment::lazy(crate::shape::Vertex::new(1, 1))).unwrap();
        let s2 = cat.segment_id(&crate::paths::Segment::lazy(crate::shape::Vertex::new(2, 1))).unwrap();
        let s12 = (0..3).find(|&k| k != s1 && k != s2).unwrap();
        assert_eq!(isolated_lazy(&cat, &cat.segset([s1, s2])), cat.segset([s1, s2]));
        assert_eq!(isolated_lazy(&cat, &cat.segset([s12])), cat.empty_segset());
        assert_eq!(isolated_lazy(&cat, &cat.empty_segset()), cat.empty_segset());
        assert_eq!(isolated_lazy(&cat, &cat.segset([s1, s12])), cat.empty_segset());
    }
}
