//! Standard Young tableaux of reflected skew shapes (French convention),
//! their descent segments, reconstruction from descents, and the twist map
//! between descent sets and nonfriendly sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::catalog::{Catalog, SegSet};
use crate::complexes::CompatGraph;
use crate::error::{Error, Result};
use crate::paths::{common_runs, Segment, Walk};
use crate::shape::{Cell, Shape, Vertex};

/// A filling of the cells of a shape by `1..=N`, increasing to the East and North.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    /// `cells[k - 1]` holds label `k`.
    cells: Vec<Cell>,
}

impl Tableau {
    /// A tableau from its cells listed in label order.
    pub fn from_order(shape: &Shape, cells: Vec<Cell>) -> Result<Tableau> {
        let all: BTreeSet<Cell> = shape.cells().into_iter().collect();
        let given: BTreeSet<Cell> = cells.iter().copied().collect();
        if given != all || given.len() != cells.len() {
            return Err(Error::Invariant("filling is not a bijection onto the cells".into()));
        }
        for (k, c) in cells.iter().enumerate() {
            if cells[..k].iter().any(|d| Cell::le(*c, *d)) {
                return Err(Error::Invariant(format!("label {} breaks the increasing condition", k + 1)));
            }
        }
        Ok(Tableau { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The cell holding label `k` (1-based).
    pub fn cell(&self, k: usize) -> Cell {
        self.cells[k - 1]
    }

    pub fn order(&self) -> &[Cell] {
        &self.cells
    }

    pub fn label(&self, c: Cell) -> Option<usize> {
        self.cells.iter().position(|&d| d == c).map(|k| k + 1)
    }

    /// Rows from the bottom up; cells West of a row's first cell are `None`.
    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        let Some(x0) = self.cells.iter().map(|c| c.i).min() else {
            return Vec::new();
        };
        let mut by_row: BTreeMap<i32, BTreeMap<i32, usize>> = BTreeMap::new();
        for (k, c) in self.cells.iter().enumerate() {
            by_row.entry(c.j).or_default().insert(c.i, k + 1);
        }
        by_row
            .values()
            .map(|row| {
                let last = *row.keys().next_back().expect("nonempty row");
                (x0..=last).map(|i| row.get(&i).copied()).collect()
            })
            .collect()
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// All standard Young tableaux of a reflected skew shape.
pub fn enumerate_syt(shape: &Shape) -> Result<Vec<Tableau>> {
    if !shape.is_reflected_skew() {
        return Err(Error::NotReflectedSkew);
    }
    let cells = shape.cells();
    let below: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| (0..cells.len()).filter(|&d| cells[d] != *c && Cell::le(cells[d], *c)).collect())
        .collect();
    let mut out = Vec::new();
    let mut used = vec![false; cells.len()];
    let mut order = Vec::with_capacity(cells.len());
    fn fill(
        cells: &[Cell],
        below: &[Vec<usize>],
        used: &mut [bool],
        order: &mut Vec<Cell>,
        out: &mut Vec<Tableau>,
    ) {
        if order.len() == cells.len() {
            out.push(Tableau { cells: order.clone() });
            return;
        }
        for c in 0..cells.len() {
            if !used[c] && below[c].iter().all(|&d| used[d]) {
                used[c] = true;
                order.push(cells[c]);
                fill(cells, below, used, order, out);
                order.pop();
                used[c] = false;
            }
        }
    }
    fill(&cells, &below, &mut used, &mut order, &mut out);
    Ok(out)
}

/// The descent segment at `k`: along the boundary of `T_{≤k+1}` from the
/// SE-corner of the cell of `k + 1` to the NW-corner of the cell of `k`.
fn descent_segment(cat: &Catalog, t: &Tableau, k: usize) -> Result<usize> {
    let ideal: BTreeSet<Cell> = t.cells[..=k].iter().copied().collect();
    let (here, next) = (t.cell(k), t.cell(k + 1));
    let target = here.nw();
    let mut v = next.se();
    let mut run = vec![v];
    while v != target {
        v = if ideal.contains(&Cell::new(v.x, v.y - 1)) { v.east() } else { v.south() };
        if v.x > target.x || v.y < target.y {
            return Err(Error::Invariant(format!("descent walk at {k} misses its end")));
        }
        run.push(v);
    }
    if run.iter().any(|&w| !cat.shape().is_interior(w)) {
        return Err(Error::Invariant(format!("descent segment at {k} leaves the interior")));
    }
    cat.segment_id(&Segment::from_run(&run))
        .ok_or_else(|| Error::Invariant(format!("descent walk at {k} is not a segment")))
}

/// `k` is a descent when `k + 1` sits strictly Northwest of `k`.
pub fn descent_labels(t: &Tableau) -> Vec<usize> {
    (1..t.len())
        .filter(|&k| {
            let (a, b) = (t.cell(k), t.cell(k + 1));
            b.i < a.i && b.j > a.j
        })
        .collect()
}

/// `Des(T)`.
pub fn descents(cat: &Catalog, t: &Tableau) -> Result<SegSet> {
    let mut out = cat.empty_segset();
    for k in descent_labels(t) {
        out.insert(descent_segment(cat, t, k)?);
    }
    Ok(out)
}

/// Lazy members of a descent set not properly contained in another member.
pub fn simple_descents(cat: &Catalog, des: &SegSet) -> SegSet {
    crate::complexes::isolated_lazy(cat, des)
}

/// Two distinct descents have different endpoints and are friendly along every
/// maximal common subsegment.
pub fn descent_compatible(cat: &Catalog, s: usize, t: usize) -> bool {
    let (a, b) = (cat.segment(s), cat.segment(t));
    if s == t {
        return true;
    }
    if a.first() == b.first() || a.last() == b.last() {
        return false;
    }
    common_runs(a, b).iter().all(|r| {
        (a.is_ne_run(r.a, r.b) && b.is_sw_run(r.c, r.d)) || (a.is_sw_run(r.a, r.b) && b.is_ne_run(r.c, r.d))
    })
}

pub fn descent_graph(cat: &Catalog) -> CompatGraph {
    CompatGraph::from_predicate(cat.num_segments(), |s, t| descent_compatible(cat, s, t))
}

pub fn is_valid_descent_set(cat: &Catalog, d: &SegSet) -> bool {
    d.ones().all(|s| d.ones().all(|t| descent_compatible(cat, s, t)))
}

/// The greedy filling: place each label in the westmost addable cell whose
/// pending descents have already reached their terminal cell.
pub fn tableau_from_descents(cat: &Catalog, d: &SegSet) -> Result<Tableau> {
    let shape = cat.shape();
    if !shape.is_reflected_skew() {
        return Err(Error::NotReflectedSkew);
    }
    if !is_valid_descent_set(cat, d) {
        return Err(Error::Invariant("not a valid descent set".into()));
    }
    let cells = shape.cells();
    let mut placed: BTreeSet<Cell> = BTreeSet::new();
    let mut order = Vec::with_capacity(cells.len());
    while order.len() < cells.len() {
        let mut addable: Vec<Cell> = cells
            .iter()
            .copied()
            .filter(|c| !placed.contains(c) && cells.iter().all(|e| e == c || !Cell::le(*e, *c) || placed.contains(e)))
            .collect();
        addable.sort_by_key(|c| (c.i, c.j));
        let ready = |c: &Cell| {
            d.ones().map(|s| cat.segment(s)).all(|s| {
                let v = s.vertices();
                !(v.contains(&Cell::se(*c)) && !v.contains(&Cell::ne(*c))) || placed.contains(&Cell::new(s.last().x, s.last().y - 1))
            })
        };
        let c = addable
            .into_iter()
            .find(ready)
            .ok_or_else(|| Error::Invariant("greedy filling is stuck".into()))?;
        placed.insert(c);
        order.push(c);
    }
    let t = Tableau { cells: order };
    if descents(cat, &t)? != *d {
        return Err(Error::Invariant("greedy filling has a different descent set".into()));
    }
    Ok(t)
}

/// Edge weights and starter/closer marks induced by a set of segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedWeighting {
    /// Nonzero weights of edges between interior vertices.
    pub weights: BTreeMap<(Vertex, Vertex), u32>,
    pub starters: BTreeSet<Vertex>,
    pub closers: BTreeSet<Vertex>,
}

impl BalancedWeighting {
    pub fn from_segments(cat: &Catalog, x: &SegSet) -> BalancedWeighting {
        let mut weights = BTreeMap::new();
        let mut starters = BTreeSet::new();
        let mut closers = BTreeSet::new();
        for s in x.ones().map(|s| cat.segment(s)) {
            for e in s.vertices().windows(2) {
                *weights.entry((e[0], e[1])).or_insert(0) += 1;
            }
            starters.insert(s.first());
            closers.insert(s.last());
        }
        BalancedWeighting {
            weights,
            starters,
            closers,
        }
    }

    fn weight(&self, a: Vertex, b: Vertex) -> i64 {
        self.weights.get(&(a, b)).copied().unwrap_or(0) as i64
    }

    /// Inflow minus outflow is `+1` at closers that are not starters, `−1` at
    /// starters that are not closers, and `0` elsewhere.
    pub fn is_balanced(&self, shape: &Shape) -> bool {
        shape.interior().iter().all(|&v| {
            let flow = self.weight(v.north(), v) + self.weight(v.west(), v) - self.weight(v, v.south()) - self.weight(v, v.east());
            let expected = match (self.starters.contains(&v), self.closers.contains(&v)) {
                (false, true) => 1,
                (true, false) => -1,
                _ => 0,
            };
            flow == expected
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Descent,
    Nonfriendly,
}

/// Every set in `family` whose weighting is `w`.
pub fn decode(cat: &Catalog, w: &BalancedWeighting, family: Family) -> Vec<SegSet> {
    let graph = match family {
        Family::Descent => descent_graph(cat),
        Family::Nonfriendly => CompatGraph::nonfriendly(cat),
    };
    let mut by_first: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (k, s) in cat.segments().iter().enumerate() {
        if w.closers.contains(&s.last()) {
            by_first.entry(s.first()).or_default().push(k);
        }
    }
    let starters: Vec<Vertex> = w.starters.iter().copied().collect();
    let mut remaining = w.weights.clone();
    let mut chosen = cat.empty_segset();
    let mut closed = BTreeSet::new();
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn search(
        cat: &Catalog,
        graph: &CompatGraph,
        by_first: &HashMap<Vertex, Vec<usize>>,
        starters: &[Vertex],
        remaining: &mut BTreeMap<(Vertex, Vertex), u32>,
        chosen: &mut SegSet,
        closed: &mut BTreeSet<Vertex>,
        out: &mut Vec<SegSet>,
    ) {
        let Some((&v, rest)) = starters.split_first() else {
            if remaining.values().all(|&x| x == 0) {
                out.push(chosen.clone());
            }
            return;
        };
        for &s in by_first.get(&v).into_iter().flatten() {
            let seg = cat.segment(s);
            if closed.contains(&seg.last()) || chosen.ones().any(|t| !graph.compatible(s, t)) {
                continue;
            }
            let edges: Vec<(Vertex, Vertex)> = seg.vertices().windows(2).map(|e| (e[0], e[1])).collect();
            if edges.iter().any(|e| remaining.get(e).copied().unwrap_or(0) == 0) {
                continue;
            }
            for e in &edges {
                *remaining.get_mut(e).expect("checked") -= 1;
            }
            chosen.insert(s);
            closed.insert(seg.last());
            search(cat, graph, by_first, rest, remaining, chosen, closed, out);
            closed.remove(&seg.last());
            chosen.remove(s);
            for e in &edges {
                *remaining.get_mut(e).expect("checked") += 1;
            }
        }
    }
    search(cat, &graph, &by_first, &starters, &mut remaining, &mut chosen, &mut closed, &mut out);
    out.retain(|x| closed_exactly(cat, x, &w.closers));
    out
}

fn closed_exactly(cat: &Catalog, x: &SegSet, closers: &BTreeSet<Vertex>) -> bool {
    x.ones().map(|s| cat.segment(s).last()).collect::<BTreeSet<_>>() == *closers
}

/// `Tw` (`Family::Descent` to `Family::Nonfriendly`) and its inverse.
pub fn twist(cat: &Catalog, x: &SegSet, from: Family) -> Result<SegSet> {
    let valid = match from {
        Family::Descent => is_valid_descent_set(cat, x),
        Family::Nonfriendly => CompatGraph::nonfriendly(cat).is_face(x),
    };
    if !valid {
        return Err(Error::Invariant("twist input is not in its family".into()));
    }
    let w = BalancedWeighting::from_segments(cat, x);
    if !w.is_balanced(cat.shape()) {
        return Err(Error::Invariant("induced weighting is not balanced".into()));
    }
    let target = match from {
        Family::Descent => Family::Nonfriendly,
        Family::Nonfriendly => Family::Descent,
    };
    let mut found = decode(cat, &w, target);
    match found.len() {
        1 => Ok(found.pop().expect("one solution")),
        n => Err(Error::Invariant(format!("balanced weighting decodes to {n} sets"))),
    }
}

/// `h'[i][j]`: tableaux with `des = i` and `sdes = j`.
pub fn h_prime(cat: &Catalog) -> Result<Vec<Vec<u128>>> {
    let r = cat.rank();
    let mut h = vec![vec![0u128; r + 1]; r + 1];
    for t in enumerate_syt(cat.shape())? {
        let des = descents(cat, &t)?;
        h[des.count_ones(..)][simple_descents(cat, &des).count_ones(..)] += 1;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(cat: &Catalog, pts: &[(i32, i32)]) -> usize {
        let run: Vec<Vertex> = pts.iter().map(|&(x, y)| Vertex::new(x, y)).collect();
        cat.segment_id(&Segment::from_run(&run)).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_syt(&Shape::rect(2, 3).unwrap()).unwrap().len(), 5);
        assert_eq!(enumerate_syt(&Shape::rect(1, 5).unwrap()).unwrap().len(), 1);
        assert_eq!(enumerate_syt(&Shape::rect(3, 4).unwrap()).unwrap().len(), 462);
        let bad = Shape::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)], []).unwrap();
        assert_eq!(enumerate_syt(&bad), Err(Error::NotReflectedSkew));
    }

    #[test]
    fn rect23_h_prime() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        // 1 + x + 2xy + x²y²
        assert_eq!(h_prime(&cat).unwrap(), vec![vec![1, 0, 0], vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn rect33_has_x3y() {
        let cat = Catalog::new(&Shape::rect(3, 3).unwrap());
        assert!(h_prime(&cat).unwrap()[3][1] > 0);
    }

    #[test]
    fn empty_descents_give_column_reading() {
        let shape = Shape::rect(2, 3).unwrap();
        let cat = Catalog::new(&shape);
        let t = tableau_from_descents(&cat, &cat.empty_segset()).unwrap();
        let columns: Vec<Cell> = (0..3).flat_map(|i| (0..2).map(move |j| Cell::new(i, j))).collect();
        assert_eq!(t.order(), columns.as_slice());
        assert_eq!(t.rows(), vec![vec![Some(1), Some(3), Some(5)], vec![Some(2), Some(4), Some(6)]]);
    }

    #[test]
    fn validity_examples() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        let s1 = seg(&cat, &[(1, 1)]);
        let s12 = seg(&cat, &[(1, 1), (2, 1)]);
        assert!(is_valid_descent_set(&cat, &cat.empty_segset()));
        assert!(!is_valid_descent_set(&cat, &cat.segset([s1, s12])));
    }

    #[test]
    fn twist_fixes_empty_and_lazy() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        assert_eq!(twist(&cat, &cat.empty_segset(), Family::Descent).unwrap(), cat.empty_segset());
        let lazy = cat.segset([seg(&cat, &[(1, 1)])]);
        assert_eq!(twist(&cat, &lazy, Family::Descent).unwrap(), lazy);
        assert_eq!(twist(&cat, &lazy, Family::Nonfriendly).unwrap(), lazy);
    }
}
