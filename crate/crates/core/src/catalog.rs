//! Canonically indexed ground sets of a shape: non-cone paths and segments,
//! with their SW/NE-subsegment sets as bit-sets over the segment index.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::paths::{
    concatenate, enumerate_paths, enumerate_segments, ne_subsegments, sw_subsegments, Path,
    Segment, Walk,
};
use crate::shape::Shape;

/// A set of segments, indexed by [`Catalog::segments`].
pub type SegSet = FixedBitSet;

#[derive(Clone, Debug)]
pub struct Catalog {
    shape: Shape,
    segments: Vec<Segment>,
    segment_index: HashMap<Segment, usize>,
    seg_sw: Vec<SegSet>,
    seg_ne: Vec<SegSet>,
    /// Contiguous subsegments of each segment, itself included.
    seg_sub: Vec<SegSet>,
    /// Triples `(s, t, u)` with `s∘t = u`.
    concatenations: Vec<(usize, usize, usize)>,
    /// Non-cone boundary paths: the ground set of the reduced nonkissing complex.
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    path_sw: Vec<SegSet>,
    path_ne: Vec<SegSet>,
    /// Initial path of each interior vertex, in interior order.
    initial: Vec<usize>,
}

impl Catalog {
    pub fn new(shape: &Shape) -> Catalog {
        let segments = enumerate_segments(shape);
        let segment_index: HashMap<Segment, usize> =
            segments.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        let n = segments.len();
        let to_set = |list: Vec<Segment>| -> SegSet {
            let mut set = SegSet::with_capacity(n);
            for s in list {
                set.insert(segment_index[&s]);
            }
            set
        };
        let seg_sw: Vec<SegSet> = segments.iter().map(|s| to_set(sw_subsegments(s))).collect();
        let seg_ne: Vec<SegSet> = segments.iter().map(|s| to_set(ne_subsegments(s))).collect();
        let seg_sub: Vec<SegSet> = segments
            .iter()
            .map(|s| {
                let mut set = SegSet::with_capacity(n);
                for (k, t) in segments.iter().enumerate() {
                    if s.contains_segment(t) {
                        set.insert(k);
                    }
                }
                set
            })
            .collect();
        let mut concatenations = Vec::new();
        for (i, s) in segments.iter().enumerate() {
            for (j, t) in segments.iter().enumerate() {
                if let Some(u) = concatenate(s, t) {
                    concatenations.push((i, j, segment_index[&u]));
                }
            }
        }
        let paths: Vec<Path> = enumerate_paths(shape).into_iter().filter(|p| !p.is_cone()).collect();
        let path_index = paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let path_sw = paths.iter().map(|p| to_set(sw_subsegments(p))).collect();
        let path_ne = paths.iter().map(|p| to_set(ne_subsegments(p))).collect();
        let initial = shape
            .interior()
            .iter()
            .map(|&v| {
                let mut walk = vec![v];
                while shape.is_interior(walk[0]) {
                    walk.insert(0, walk[0].west());
                }
                while shape.is_interior(*walk.last().unwrap()) {
                    walk.push(walk.last().unwrap().south());
                }
                let p = Path::new(shape, walk).expect("initial path is a boundary path");
                let idx: &HashMap<Path, usize> = &path_index;
                idx[&p]
            })
            .collect();
        Catalog {
            shape: shape.clone(),
            segments,
            segment_index,
            seg_sw,
            seg_ne,
            seg_sub,
            concatenations,
            paths,
            path_index,
            path_sw,
            path_ne,
            initial,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Number of interior vertices.
    pub fn rank(&self) -> usize {
        self.shape.num_interior()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn num_segments(&self) -> usize {
        self.segments.len()
    }

    pub fn segment(&self, k: usize) -> &Segment {
        &self.segments[k]
    }

    pub fn segment_id(&self, s: &Segment) -> Option<usize> {
        self.segment_index.get(s).copied()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, k: usize) -> &Path {
        &self.paths[k]
    }

    pub fn path_id(&self, p: &Path) -> Option<usize> {
        self.path_index.get(p).copied()
    }

    /// `A_s`.
    pub fn seg_sw(&self, s: usize) -> &SegSet {
        &self.seg_sw[s]
    }

    /// `K_s`.
    pub fn seg_ne(&self, s: usize) -> &SegSet {
        &self.seg_ne[s]
    }

    /// Contiguous subsegments of `s`, including `s`.
    pub fn subsegments(&self, s: usize) -> &SegSet {
        &self.seg_sub[s]
    }

    /// `t` is a contiguous run of `s`.
    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.seg_sub[s].contains(t)
    }

    pub fn concatenations(&self) -> &[(usize, usize, usize)] {
        &self.concatenations
    }

    /// `A_p`.
    pub fn path_sw(&self, p: usize) -> &SegSet {
        &self.path_sw[p]
    }

    /// `K_p`.
    pub fn path_ne(&self, p: usize) -> &SegSet {
        &self.path_ne[p]
    }

    /// Initial path indices in interior order.
    pub fn initial_paths(&self) -> &[usize] {
        &self.initial
    }

    pub fn empty_segset(&self) -> SegSet {
        SegSet::with_capacity(self.segments.len())
    }

    pub fn full_segset(&self) -> SegSet {
        let mut s = self.empty_segset();
        s.insert_range(..);
        s
    }

    pub fn segset(&self, members: impl IntoIterator<Item = usize>) -> SegSet {
        let mut s = self.empty_segset();
        s.extend(members);
        s
    }

    /// Paths `p`, `q` kiss iff some segment lies in `K_p ∩ A_q` or `A_p ∩ K_q`.
    pub fn paths_kiss(&self, p: usize, q: usize) -> bool {
        !self.path_ne[p].is_disjoint(&self.path_sw[q]) || !self.path_sw[p].is_disjoint(&self.path_ne[q])
    }

    /// Segments `s`, `t` are friendly iff `K_s ∩ A_t` or `A_s ∩ K_t` is nonempty.
    pub fn segments_friendly(&self, s: usize, t: usize) -> bool {
        !self.seg_ne[s].is_disjoint(&self.seg_sw[t]) || !self.seg_sw[s].is_disjoint(&self.seg_ne[t])
    }

    /// The unique maximal segment along which `p` and `q` kiss, with `true`
    /// when `p` enters it from the West and leaves South.
    pub fn kiss_label(&self, p: usize, q: usize) -> Option<(usize, bool)> {
        let witnesses = crate::paths::kissing_witnesses(&self.paths[p], &self.paths[q]);
        match witnesses.as_slice() {
            [w] => Some((
                self.segment_index[&w.segment],
                w.west_south == crate::paths::Role::First,
            )),
            _ => None,
        }
    }

    /// Interior index of every vertex of segment `s`.
    pub fn segment_vertices(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.segments[s]
            .vertices()
            .iter()
            .map(|&v| self.shape.interior_index(v).expect("segment vertices are interior"))
    }

    /// Index of the lazy segment at interior vertex `i`.
    pub fn lazy_segment(&self, i: usize) -> usize {
        self.segment_index[&Segment::lazy(self.shape.interior()[i])]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{friendly, kissing};

    #[test]
    fn bitset_relations_match_definitions() {
        for (k, m) in [(2, 3), (3, 3), (3, 4), (2, 5)] {
            let cat = Catalog::new(&Shape::rect(k, m).unwrap());
            for p in 0..cat.num_paths() {
                for q in 0..cat.num_paths() {
                    assert_eq!(cat.paths_kiss(p, q), kissing(cat.path(p), cat.path(q)).is_some());
                }
            }
            for s in 0..cat.num_segments() {
                for t in 0..cat.num_segments() {
                    assert_eq!(
                        cat.segments_friendly(s, t),
                        friendly(cat.segment(s), cat.segment(t)).is_some()
                    );
                }
            }
        }
    }

    #[test]
    fn unique_common_element() {
        let cat = Catalog::new(&Shape::rect(3, 4).unwrap());
        for s in 0..cat.num_segments() {
            let mut both = cat.seg_sw(s).clone();
            both.intersect_with(cat.seg_ne(s));
            assert_eq!(both.ones().collect::<Vec<_>>(), vec![s]);
        }
    }

    #[test]
    fn initial_paths_turn_once() {
        let cat = Catalog::new(&Shape::rect(3, 4).unwrap());
        assert_eq!(cat.initial_paths().len(), 6);
        for &p in cat.initial_paths() {
            assert!(cat.path_sw(p).is_clear());
        }
    }
}
