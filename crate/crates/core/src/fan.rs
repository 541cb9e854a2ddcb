//! The Grid-associahedron fan in exact arithmetic: g-vectors, cone location,
//! facet inequalities, shards and the geometric shard intersection order.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::Serialize;

use crate::catalog::{Catalog, SegSet};
use crate::complexes::{CompatGraph, NonkissingComplex};
use crate::error::{Error, Result};
use crate::lattice::Poset;
use crate::paths::{common_runs, Walk};
use crate::tamari::GridTamari;

pub type Rational = Ratio<i64>;

/// `g_p`: `+1` where `p` turns North-to-East, `−1` where it turns West-to-South.
pub fn g_vector(cat: &Catalog, p: usize) -> Vec<i64> {
    let shape = cat.shape();
    let w = cat.path(p).vertices();
    let mut g = vec![0; cat.rank()];
    for i in 1..w.len() - 1 {
        let Some(k) = shape.interior_index(w[i]) else { continue };
        if w[i - 1] == w[i].north() && w[i + 1] == w[i].east() {
            g[k] = 1;
        } else if w[i - 1] == w[i].west() && w[i + 1] == w[i].south() {
            g[k] = -1;
        }
    }
    g
}

/// `α_s(x)`: the sum of the coordinates of `x` over the vertices of `s`.
pub fn alpha<T: Copy + std::iter::Sum<T>>(cat: &Catalog, s: usize, x: &[T]) -> T {
    cat.segment_vertices(s).map(|k| x[k]).sum()
}

/// Clears denominators: a positive multiple of `x` with integer entries.
pub fn scale_to_integers(x: &[Rational]) -> Vec<i128> {
    let common: i128 = x.iter().map(|q| *q.denom() as i128).product();
    x.iter().map(|q| *q.numer() as i128 * (common / *q.denom() as i128)).collect()
}

#[derive(Clone, Debug)]
struct FacetCone {
    members: Vec<usize>,
    /// Adjugate of the ray matrix, signed so that coefficient signs are `adj · x`.
    adj: Vec<Vec<i128>>,
    /// Absolute value of the determinant.
    det: i128,
}

/// Where a point sits in the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    /// Paths with a strictly positive coefficient.
    pub face: FixedBitSet,
    /// Every facet whose cone contains the point.
    pub facets: Vec<usize>,
    /// Coefficient of each member of `face`.
    pub coefficients: Vec<(usize, Ratio<i128>)>,
}

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    num_paths: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<FacetCone>,
}

impl Fan {
    pub fn new(cat: &Catalog, nk: &NonkissingComplex) -> Result<Fan> {
        let r = cat.rank();
        let rays: Vec<Vec<i64>> = (0..cat.num_paths()).map(|p| g_vector(cat, p)).collect();
        let mut cones = Vec::with_capacity(nk.num_facets());
        for facet in nk.facets() {
            let members: Vec<usize> = facet.ones().collect();
            let m: Vec<Vec<Ratio<i128>>> = (0..r)
                .map(|row| members.iter().map(|&p| Ratio::from_integer(rays[p][row] as i128)).collect())
                .collect();
            let (inv, det) = invert(m).ok_or_else(|| Error::Invariant("g-vectors of a facet are dependent".into()))?;
            let sign = det.signum();
            let adj = inv
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|q| {
                            let v = *q * Ratio::from_integer(det * sign);
                            debug_assert!(v.is_integer());
                            v.to_integer()
                        })
                        .collect()
                })
                .collect();
            cones.push(FacetCone {
                members,
                adj,
                det: det.abs(),
            });
        }
        Ok(Fan {
            rank: r,
            num_paths: cat.num_paths(),
            rays,
            cones,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ray(&self, p: usize) -> &[i64] {
        &self.rays[p]
    }

    pub fn num_facets(&self) -> usize {
        self.cones.len()
    }

    /// Coefficients of integer `x` in the ray basis of facet `f`, times `|det|`.
    pub fn scaled_coefficients(&self, f: usize, x: &[i128]) -> Vec<(usize, i128)> {
        let cone = &self.cones[f];
        cone.members
            .iter()
            .zip(&cone.adj)
            .map(|(&p, row)| (p, row.iter().zip(x).map(|(a, b)| a * b).sum()))
            .collect()
    }

    pub fn contains(&self, f: usize, x: &[i128]) -> bool {
        self.scaled_coefficients(f, x).iter().all(|&(_, c)| c >= 0)
    }

    /// Locates `x`, failing if two containing facets disagree on the positive support.
    pub fn locate(&self, x: &[Rational]) -> Result<Location> {
        let xi = scale_to_integers(x);
        let scale: i128 = x.iter().map(|q| *q.denom() as i128).product();
        let mut found: Option<Location> = None;
        let mut facets = Vec::new();
        for f in 0..self.cones.len() {
            let coeffs = self.scaled_coefficients(f, &xi);
            if coeffs.iter().any(|&(_, c)| c < 0) {
                continue;
            }
            facets.push(f);
            let mut face = FixedBitSet::with_capacity(self.num_paths);
            let mut positive = Vec::new();
            for (p, c) in coeffs {
                if c > 0 {
                    face.insert(p);
                    positive.push((p, Ratio::new(c, self.cones[f].det * scale)));
                }
            }
            match &found {
                None => {
                    found = Some(Location {
                        face,
                        facets: Vec::new(),
                        coefficients: positive,
                    })
                }
                Some(loc) => {
                    if loc.face != face || loc.coefficients != positive {
                        return Err(Error::Invariant("point has two different positive representations".into()));
                    }
                }
            }
        }
        let mut loc = found.ok_or_else(|| Error::Invariant("point lies in no facet cone".into()))?;
        loc.facets = facets;
        Ok(loc)
    }
}

/// Gauss-Jordan inverse with the determinant.
fn invert(mut m: Vec<Vec<Ratio<i128>>>) -> Option<(Vec<Vec<Ratio<i128>>>, i128)> {
    let n = m.len();
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let mut inv: Vec<Vec<Ratio<i128>>> = (0..n).map(|i| (0..n).map(|j| if i == j { one } else { zero }).collect()).collect();
    let mut det = one;
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != zero)?;
        if pivot != col {
            m.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != zero {
                let factor = m[r][col];
                for j in 0..n {
                    let (a, b) = (m[col][j], inv[col][j]);
                    m[r][j] -= factor * a;
                    inv[r][j] -= factor * b;
                }
            }
        }
    }
    debug_assert!(det.is_integer());
    Some((inv, det.to_integer()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    /// `α_s(x) ≥ 0`.
    NonNegative,
    /// `α_s(x) ≤ 0`.
    NonPositive,
}

/// H-description of the cone of facet `f`: descents give `≥ 0`, ascents `≤ 0`.
pub fn facet_inequalities(cat: &Catalog, gt: &GridTamari, f: usize) -> Vec<(usize, Sign)> {
    let mut out: Vec<(usize, Sign)> = gt
        .descents(cat, f)
        .ones()
        .map(|s| (s, Sign::NonNegative))
        .chain(gt.ascents(cat, f).ones().map(|s| (s, Sign::NonPositive)))
        .collect();
    out.sort_by_key(|&(s, _)| s);
    out
}

pub fn satisfies(cat: &Catalog, inequalities: &[(usize, Sign)], x: &[i128]) -> bool {
    inequalities.iter().all(|&(s, sign)| {
        let v = alpha(cat, s, x);
        match sign {
            Sign::NonNegative => v >= 0,
            Sign::NonPositive => v <= 0,
        }
    })
}

/// Paths turning an even number of times inside every maximal run they share with `s`.
pub fn shard_paths(cat: &Catalog, s: usize) -> FixedBitSet {
    let seg = cat.segment(s);
    let mut out = FixedBitSet::with_capacity(cat.num_paths());
    for (k, p) in cat.paths().iter().enumerate() {
        let w = p.vertices();
        let even = common_runs(p, seg).iter().all(|run| {
            let turns = (run.a..=run.b)
                .filter(|&i| {
                    let (dx0, dy0) = (w[i].x - w[i - 1].x, w[i].y - w[i - 1].y);
                    let (dx1, dy1) = (w[i + 1].x - w[i].x, w[i + 1].y - w[i].y);
                    (dx0, dy0) != (dx1, dy1)
                })
                .count();
            turns % 2 == 0
        });
        if even {
            out.insert(k);
        }
    }
    out
}

/// The shard `Σ(s)`, as the paths spanning its faces and as inequalities on `H_s`.
#[derive(Clone, Debug)]
pub struct Shard {
    pub segment: usize,
    pub paths: FixedBitSet,
    /// `α_t ≥ 0` for `t ∈ A_s` and `α_t ≤ 0` for `t ∈ K_s`.
    pub inequalities: Vec<(usize, Sign)>,
}

pub fn shard(cat: &Catalog, s: usize) -> Shard {
    let inequalities = cat
        .seg_sw(s)
        .ones()
        .map(|t| (t, Sign::NonNegative))
        .chain(cat.seg_ne(s).ones().map(|t| (t, Sign::NonPositive)))
        .collect();
    Shard {
        segment: s,
        paths: shard_paths(cat, s),
        inequalities,
    }
}

/// Largest face of the nonkissing complex using only paths from `allowed`.
pub fn max_face_size(graph: &CompatGraph, allowed: &FixedBitSet) -> usize {
    fn grow(graph: &CompatGraph, candidates: FixedBitSet, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        if size + candidates.count_ones(..) <= *best {
            return;
        }
        let mut rest = candidates;
        while let Some(p) = rest.minimum() {
            rest.remove(p);
            let mut next = rest.clone();
            next.intersect_with(graph.neighbours(p));
            grow(graph, next, size + 1, best);
            if size + 1 + rest.count_ones(..) <= *best {
                return;
            }
        }
    }
    let mut best = 0;
    grow(graph, allowed.clone(), 0, &mut best);
    best
}

/// `Ψ^f`: intersections of shards, each stored as the set of paths spanning it,
/// ordered by reverse inclusion.
#[derive(Clone, Debug)]
pub struct ShardOrder {
    elements: Vec<FixedBitSet>,
    segments: Vec<SegSet>,
    codim: Vec<usize>,
    poset: Poset,
}

impl ShardOrder {
    pub fn new(cat: &Catalog, nk: &NonkissingComplex) -> Result<ShardOrder> {
        let shards: Vec<FixedBitSet> = (0..cat.num_segments()).map(|s| shard_paths(cat, s)).collect();
        let mut full = FixedBitSet::with_capacity(cat.num_paths());
        full.insert_range(..);
        let mut seen: BTreeSet<FixedBitSet> = BTreeSet::from([full.clone()]);
        let mut stack = vec![full];
        while let Some(z) = stack.pop() {
            for g in &shards {
                let mut next = z.clone();
                next.intersect_with(g);
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        let mut elements: Vec<FixedBitSet> = seen.into_iter().collect();
        elements.sort_by(|a, b| b.count_ones(..).cmp(&a.count_ones(..)).then_with(|| a.cmp(b)));
        let segments: Vec<SegSet> = elements
            .iter()
            .map(|z| cat.segset((0..cat.num_segments()).filter(|&s| z.is_subset(&shards[s]))))
            .collect();
        let codim = elements.iter().map(|z| cat.rank() - max_face_size(nk.graph(), z)).collect();
        let n = elements.len();
        let poset = Poset::from_relation(n, |a, b| elements[a].is_superset(&elements[b]))?;
        Ok(ShardOrder {
            elements,
            segments,
            codim,
            poset,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Paths spanning the faces of the `k`-th intersection.
    pub fn paths(&self, k: usize) -> &FixedBitSet {
        &self.elements[k]
    }

    /// `{s : Z ⊆ Σ(s)}`.
    pub fn segments(&self, k: usize) -> &SegSet {
        &self.segments[k]
    }

    pub fn codim(&self, k: usize) -> usize {
        self.codim[k]
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn index_by_segments(&self) -> HashMap<SegSet, usize> {
        self.segments.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::Segment;
    use crate::shape::Shape;

    fn setup(k: u32, m: u32) -> (Catalog, NonkissingComplex, Fan) {
        let cat = Catalog::new(&Shape::rect(k, m).unwrap());
        let nk = NonkissingComplex::new(&cat).unwrap();
        let fan = Fan::new(&cat, &nk).unwrap();
        (cat, nk, fan)
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| Rational::from_integer(a)).collect()
    }

    #[test]
    fn g_vectors() {
        let (cat, _, _) = setup(3, 4);
        for (k, &p) in cat.initial_paths().iter().enumerate() {
            let mut e = vec![0; cat.rank()];
            e[k] = -1;
            assert_eq!(g_vector(&cat, p), e);
        }
        for p in 0..cat.num_paths() {
            let g = g_vector(&cat, p);
            assert!(g.iter().any(|&c| c != 0));
            // Each maximal common run contributes -1, 0 or 1.
            for s in 0..cat.num_segments() {
                for run in common_runs(cat.path(p), cat.segment(s)) {
                    let t = cat.segment_id(&Segment::from_run(&cat.path(p).vertices()[run.a..=run.b])).unwrap();
                    assert!((-1..=1).contains(&alpha(&cat, t, &g)));
                }
            }
        }
        // A path can meet a segment in two runs, each a West-to-South turn.
        let p = cat.paths().iter().position(|p| p.to_string() == "[(0,2) (1,2) (1,1) (2,1) (2,0)]").unwrap();
        let s = cat.segments().iter().position(|s| s.to_string() == "[(1,2) (2,2) (2,1)]").unwrap();
        assert_eq!(alpha(&cat, s, &g_vector(&cat, p)), -2);
    }

    #[test]
    fn locate_basics() {
        let (cat, _, fan) = setup(2, 3);
        let origin = fan.locate(&q(&[0, 0])).unwrap();
        assert!(origin.face.is_clear());
        assert_eq!(origin.facets.len(), 5);
        for p in 0..cat.num_paths() {
            let loc = fan.locate(&q(fan.ray(p))).unwrap();
            assert_eq!(loc.face.ones().collect::<Vec<_>>(), vec![p]);
            assert_eq!(loc.coefficients, vec![(p, Ratio::from_integer(1))]);
        }
        let half = vec![Rational::new(1, 2), Rational::new(-1, 3)];
        assert_eq!(fan.locate(&half).unwrap().facets.len(), 1);
    }

    #[test]
    fn rect22_cones() {
        let (cat, nk, fan) = setup(2, 2);
        let gt = GridTamari::new(&nk).unwrap();
        let ineq = facet_inequalities(&cat, &gt, 0);
        assert_eq!(ineq, vec![(0, Sign::NonPositive)]);
        assert!(fan.contains(0, &[-5]) && !fan.contains(0, &[1]));
        // The two paths through the lone vertex both turn there once.
        assert!(shard_paths(&cat, 0).is_clear());
    }

    #[test]
    fn rect23_shard_order() {
        let (cat, nk, _) = setup(2, 3);
        let order = ShardOrder::new(&cat, &nk).unwrap();
        assert_eq!(order.len(), 5);
        assert!(order.segments(0).is_clear());
        assert_eq!(order.codim(0), 0);
        assert_eq!(order.codim(order.len() - 1), 2);
    }
}
