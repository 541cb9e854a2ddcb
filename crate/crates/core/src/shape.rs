//! Shapes: finite vertex-induced subgraphs of the square lattice.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of vertices accepted from external input.
pub const MAX_VERTICES: usize = 4096;
/// Coordinates accepted from external input lie in `-COORD_LIMIT..=COORD_LIMIT`.
pub const COORD_LIMIT: i64 = 1 << 20;

/// A lattice point. `x` grows to the East, `y` grows to the North.
///
/// Vertices are ordered west-to-east, then north-to-south.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Vertex {
    pub x: i32,
    pub y: i32,
}

impl Vertex {
    pub const fn new(x: i32, y: i32) -> Self {
        Vertex { x, y }
    }
    pub fn north(self) -> Self {
        Vertex::new(self.x, self.y + 1)
    }
    pub fn south(self) -> Self {
        Vertex::new(self.x, self.y - 1)
    }
    pub fn east(self) -> Self {
        Vertex::new(self.x + 1, self.y)
    }
    pub fn west(self) -> Self {
        Vertex::new(self.x - 1, self.y)
    }
    pub fn neighbours(self) -> [Vertex; 4] {
        [self.north(), self.east(), self.south(), self.west()]
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then(other.y.cmp(&self.y))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<[i32; 2]> for Vertex {
    fn from(p: [i32; 2]) -> Self {
        Vertex::new(p[0], p[1])
    }
}

impl From<Vertex> for [i32; 2] {
    fn from(v: Vertex) -> Self {
        [v.x, v.y]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A unit square of the shape, named by its south-west corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Cell {
    pub i: i32,
    pub j: i32,
}

impl Cell {
    pub const fn new(i: i32, j: i32) -> Self {
        Cell { i, j }
    }
    pub fn corners(self) -> [Vertex; 4] {
        [self.sw(), self.se(), self.nw(), self.ne()]
    }
    pub fn sw(self) -> Vertex {
        Vertex::new(self.i, self.j)
    }
    pub fn se(self) -> Vertex {
        Vertex::new(self.i + 1, self.j)
    }
    pub fn nw(self) -> Vertex {
        Vertex::new(self.i, self.j + 1)
    }
    pub fn ne(self) -> Vertex {
        Vertex::new(self.i + 1, self.j + 1)
    }
    /// Dominance order of the cell poset.
    pub fn le(self, other: Cell) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl From<[i32; 2]> for Cell {
    fn from(p: [i32; 2]) -> Self {
        Cell::new(p[0], p[1])
    }
}

impl From<Cell> for [i32; 2] {
    fn from(c: Cell) -> Self {
        [c.i, c.j]
    }
}

/// A connected induced subgraph of Z² with a designated set of interior vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    vertices: BTreeSet<Vertex>,
    extra_boundary: BTreeSet<Vertex>,
    interior: Vec<Vertex>,
    interior_index: HashMap<Vertex, usize>,
}

impl Shape {
    pub fn from_vertices(
        vertices: impl IntoIterator<Item = Vertex>,
        extra_boundary: impl IntoIterator<Item = Vertex>,
    ) -> Result<Shape> {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::EmptyShape);
        }
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooLarge(MAX_VERTICES));
        }
        let extra_boundary: BTreeSet<Vertex> = extra_boundary.into_iter().collect();
        for &v in &extra_boundary {
            if !vertices.contains(&v) {
                return Err(Error::ExtraBoundaryMissing(v));
            }
            if !v.neighbours().iter().all(|w| vertices.contains(w)) {
                return Err(Error::ExtraBoundaryDegree(v));
            }
        }
        if !is_connected(&vertices) {
            return Err(Error::Disconnected);
        }
        let interior: Vec<Vertex> = vertices
            .iter()
            .copied()
            .filter(|v| {
                !extra_boundary.contains(v) && v.neighbours().iter().all(|w| vertices.contains(w))
            })
            .collect();
        let interior_index = interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ok(Shape {
            vertices,
            extra_boundary,
            interior,
            interior_index,
        })
    }

    /// The shape spanned by the corners of the given cells.
    pub fn from_cells(
        cells: impl IntoIterator<Item = Cell>,
        extra_boundary: impl IntoIterator<Item = Vertex>,
    ) -> Result<Shape> {
        let vertices: BTreeSet<Vertex> = cells.into_iter().flat_map(|c| c.corners()).collect();
        Shape::from_vertices(vertices, extra_boundary)
    }

    /// The `k × m` rectangle: vertices `(i, j)` with `0 ≤ i ≤ m`, `0 ≤ j ≤ k`.
    pub fn rect(k: u32, m: u32) -> Result<Shape> {
        let n = (k as usize + 1) * (m as usize + 1);
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(MAX_VERTICES));
        }
        let vertices = (0..=m as i32).flat_map(|i| (0..=k as i32).map(move |j| Vertex::new(i, j)));
        Shape::from_vertices(vertices, [])
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn extra_boundary(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.extra_boundary.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        self.interior_index.contains_key(&v)
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.contains(v) && !self.is_interior(v)
    }

    /// Interior vertices in canonical order.
    pub fn interior(&self) -> &[Vertex] {
        &self.interior
    }

    pub fn interior_index(&self, v: Vertex) -> Option<usize> {
        self.interior_index.get(&v).copied()
    }

    pub fn num_interior(&self) -> usize {
        self.interior.len()
    }

    pub fn has_cell(&self, c: Cell) -> bool {
        c.corners().iter().all(|&v| self.contains(v))
    }

    /// Cells sorted by `(i, j)`.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self
            .vertices
            .iter()
            .map(|v| Cell::new(v.x, v.y))
            .filter(|&c| self.has_cell(c))
            .collect();
        cells.sort();
        cells
    }

    /// Reflection across the anti-diagonal, `(x, y) ↦ (−y, −x)`.
    ///
    /// East steps become South steps and vice versa, so boundary paths and
    /// segments map to boundary paths and segments with the two sides swapped.
    pub fn transpose(&self) -> Shape {
        Shape::from_vertices(
            self.vertices.iter().map(|&v| transpose_vertex(v)),
            self.extra_boundary.iter().map(|&v| transpose_vertex(v)),
        )
        .expect("transpose of a valid shape is valid")
    }

    /// Translate so that the minimum x and y coordinates are zero.
    pub fn normalized(&self) -> Shape {
        let dx = self.vertices.iter().map(|v| v.x).min().unwrap_or(0);
        let dy = self.vertices.iter().map(|v| v.y).min().unwrap_or(0);
        let shift = |v: Vertex| Vertex::new(v.x - dx, v.y - dy);
        Shape::from_vertices(
            self.vertices.iter().map(|&v| shift(v)),
            self.extra_boundary.iter().map(|&v| shift(v)),
        )
        .expect("translate of a valid shape is valid")
    }

    pub fn is_reflected_skew(&self) -> bool {
        // Diagonal condition, read along the NE diagonal so that French skew
        // diagrams qualify: (i,j), (i+1,j+1) present forces (i+1,j), (i,j+1).
        for &v in &self.vertices {
            let d = Vertex::new(v.x + 1, v.y + 1);
            if self.contains(d) && !(self.contains(v.north()) && self.contains(v.east())) {
                return false;
            }
        }
        let cells = self.cells();
        let n = cells.len();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        // reach[a][b]: b is reachable from a by steps to the cell immediately North or East.
        let mut reach = vec![vec![false; n]; n];
        for a in 0..n {
            let mut stack = vec![a];
            while let Some(c) = stack.pop() {
                if reach[a][c] {
                    continue;
                }
                reach[a][c] = true;
                let Cell { i, j } = cells[c];
                for nb in [Cell::new(i + 1, j), Cell::new(i, j + 1)] {
                    if let Some(&k) = index.get(&nb) {
                        stack.push(k);
                    }
                }
            }
        }
        for a in 0..n {
            for c in 0..n {
                let common_start = (0..n).any(|b| reach[b][a] && reach[b][c]);
                let common_end = (0..n).any(|e| reach[a][e] && reach[c][e]);
                if !common_start || !common_end {
                    return false;
                }
            }
        }
        true
    }

    pub fn cell_poset(&self) -> CellPoset {
        CellPoset {
            cells: self.cells(),
        }
    }
}

pub fn transpose_vertex(v: Vertex) -> Vertex {
    Vertex::new(-v.y, -v.x)
}

fn is_connected(vertices: &BTreeSet<Vertex>) -> bool {
    let Some(&start) = vertices.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in v.neighbours() {
            if vertices.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == vertices.len()
}

/// Cells of a shape under the dominance order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPoset {
    pub cells: Vec<Cell>,
}

impl CellPoset {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.cells[a].le(self.cells[b])
    }

    /// Number of linear extensions, by dynamic programming over order ideals.
    pub fn count_linear_extensions(&self) -> u128 {
        let n = self.cells.len();
        assert!(n <= 64, "cell poset too large for the ideal DP");
        let below: Vec<u64> = (0..n)
            .map(|b| {
                (0..n)
                    .filter(|&a| a != b && self.le(a, b))
                    .fold(0u64, |m, a| m | (1 << a))
            })
            .collect();
        let mut layer: HashMap<u64, u128> = HashMap::from([(0, 1)]);
        for _ in 0..n {
            let mut next: HashMap<u64, u128> = HashMap::new();
            for (&ideal, &count) in &layer {
                for (c, &req) in below.iter().enumerate() {
                    if ideal & (1 << c) == 0 && ideal & req == req {
                        *next.entry(ideal | (1 << c)).or_default() += count;
                    }
                }
            }
            layer = next;
        }
        layer.values().sum()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeJson {
    #[serde(default)]
    rect: Option<[u32; 2]>,
    #[serde(default)]
    cells: Option<Vec<[i64; 2]>>,
    #[serde(default)]
    vertices: Option<Vec<[i64; 2]>>,
    #[serde(default)]
    extra_boundary: Option<Vec<[i64; 2]>>,
}

fn coord(v: i64) -> Result<i32> {
    if v.abs() > COORD_LIMIT {
        return Err(Error::CoordinateRange(v));
    }
    Ok(v as i32)
}

fn points(list: &[[i64; 2]]) -> Result<Vec<Vertex>> {
    if list.len() > MAX_VERTICES {
        return Err(Error::TooLarge(MAX_VERTICES));
    }
    list.iter()
        .map(|&[x, y]| Ok(Vertex::new(coord(x)?, coord(y)?)))
        .collect()
}

impl Shape {
    /// Parse `{"rect": [k, m]}`, `{"cells": [[i, j], ...]}` or `{"vertices": [[x, y], ...]}`,
    /// each with an optional `"extra_boundary": [[x, y], ...]`.
    pub fn from_json(text: &str) -> Result<Shape> {
        let raw: ShapeJson =
            serde_json::from_str(text).map_err(|e| Error::ShapeJson(e.to_string()))?;
        let extra = points(raw.extra_boundary.as_deref().unwrap_or(&[]))?;
        match (raw.rect, raw.cells, raw.vertices) {
            (Some([k, m]), None, None) => {
                let base = Shape::rect(k, m)?;
                Shape::from_vertices(base.vertices, extra)
            }
            (None, Some(cells), None) => {
                let cells: Vec<Cell> = points(&cells)?
                    .into_iter()
                    .map(|v| Cell::new(v.x, v.y))
                    .collect();
                Shape::from_cells(cells, extra)
            }
            (None, None, Some(vertices)) => Shape::from_vertices(points(&vertices)?, extra),
            _ => Err(Error::ShapeJson(
                "expected exactly one of \"rect\", \"cells\", \"vertices\"".into(),
            )),
        }
    }

    /// Parse the shorthand `rect:KxM`.
    pub fn from_spec(spec: &str) -> Result<Shape> {
        let bad = || Error::ShapeSpec(spec.chars().take(64).collect());
        let dims = spec.trim().strip_prefix("rect:").ok_or_else(bad)?;
        let (k, m) = dims.split_once(['x', 'X']).ok_or_else(bad)?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        Shape::rect(k, m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|&v| <[i32; 2]>::from(v)).collect::<Vec<_>>(),
            "extra_boundary": self.extra_boundary.iter().map(|&v| <[i32; 2]>::from(v)).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_counts() {
        let s = Shape::rect(2, 3).unwrap();
        assert_eq!(s.interior(), &[Vertex::new(1, 1), Vertex::new(2, 1)]);
        assert_eq!(s.cells().len(), 6);
        let s = Shape::rect(1, 1).unwrap();
        assert_eq!(s.num_interior(), 0);
        assert_eq!(s.cells().len(), 1);
        let s = Shape::rect(3, 4).unwrap();
        assert_eq!(s.num_interior(), 6);
        assert_eq!(s.cells().len(), 12);
    }

    #[test]
    fn canonical_vertex_order() {
        let mut vs = vec![Vertex::new(1, 0), Vertex::new(0, 0), Vertex::new(0, 1)];
        vs.sort();
        assert_eq!(vs, vec![Vertex::new(0, 1), Vertex::new(0, 0), Vertex::new(1, 0)]);
    }

    #[test]
    fn rejects_bad_input() {
        let far = [Vertex::new(0, 0), Vertex::new(5, 5)];
        assert_eq!(Shape::from_vertices(far, []), Err(Error::Disconnected));
        let r = Shape::rect(1, 1).unwrap();
        assert_eq!(
            Shape::from_vertices(r.vertices(), [Vertex::new(0, 0)]),
            Err(Error::ExtraBoundaryDegree(Vertex::new(0, 0)))
        );
        assert_eq!(Shape::from_vertices([], []), Err(Error::EmptyShape));
    }

    #[test]
    fn extra_boundary_removes_interior() {
        let r = Shape::rect(2, 3).unwrap();
        let s = Shape::from_vertices(r.vertices(), [Vertex::new(1, 1)]).unwrap();
        assert_eq!(s.interior(), &[Vertex::new(2, 1)]);
    }

    #[test]
    fn transpose_rect() {
        let r = Shape::rect(2, 3).unwrap();
        let t = r.transpose();
        assert_eq!(t.normalized(), Shape::rect(3, 2).unwrap());
        assert_eq!(t.transpose(), r);
        assert!(t.is_interior(transpose_vertex(Vertex::new(1, 1))));
        assert_eq!(t.num_interior(), 2);
        assert_eq!(t.cells().len(), 6);
    }

    #[test]
    fn reflected_skew_examples() {
        for (k, m) in [(1, 1), (2, 3), (3, 4), (1, 5)] {
            assert!(Shape::rect(k, m).unwrap().is_reflected_skew());
        }
        let diagonal = Shape::from_cells([Cell::new(0, 1), Cell::new(1, 0)], []).unwrap();
        assert!(!diagonal.is_reflected_skew());
        // Its interior vertex touches three cells: one linear extension but two facets.
        let ell = Shape::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(1, 1)], []).unwrap();
        assert!(!ell.is_reflected_skew());
        // The French diagrams of (2,1) and (2,2)/(1) pass the diagonal condition but
        // have two maximal, respectively two minimal, cells.
        let french = Shape::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)], []).unwrap();
        assert!(!french.is_reflected_skew());
        let skew = Shape::from_cells([Cell::new(1, 0), Cell::new(0, 1), Cell::new(1, 1)], []).unwrap();
        assert!(!skew.is_reflected_skew());
    }

    #[test]
    fn linear_extensions_match_permutation_filter() {
        // Brute force over all orderings of the cells.
        fn brute(p: &CellPoset) -> u128 {
            fn go(p: &CellPoset, used: &mut Vec<bool>, placed: usize) -> u128 {
                if placed == p.len() {
                    return 1;
                }
                let mut total = 0;
                for c in 0..p.len() {
                    if !used[c] && (0..p.len()).all(|a| a == c || used[a] || !p.le(a, c)) {
                        used[c] = true;
                        total += go(p, used, placed + 1);
                        used[c] = false;
                    }
                }
                total
            }
            go(p, &mut vec![false; p.len()], 0)
        }
        for (k, m) in [(1, 1), (2, 2), (2, 3), (3, 3), (2, 4)] {
            let p = Shape::rect(k, m).unwrap().cell_poset();
            assert_eq!(p.count_linear_extensions(), brute(&p));
        }
        assert_eq!(Shape::rect(2, 3).unwrap().cell_poset().count_linear_extensions(), 5);
        assert_eq!(Shape::rect(3, 4).unwrap().cell_poset().count_linear_extensions(), 462);
    }

    #[test]
    fn parse_inputs() {
        assert_eq!(Shape::from_spec("rect:3x4").unwrap(), Shape::rect(3, 4).unwrap());
        assert!(Shape::from_spec("rect:3").is_err());
        assert!(Shape::from_spec("square:3x4").is_err());
        let s = Shape::from_json(r#"{"rect": [2, 3], "extra_boundary": [[1, 1]]}"#).unwrap();
        assert_eq!(s.num_interior(), 1);
        let s = Shape::from_json(r#"{"cells": [[0,0],[1,0],[0,1],[1,1]]}"#).unwrap();
        assert_eq!(s, Shape::rect(2, 2).unwrap());
        assert!(Shape::from_json(r#"{"rect": [2, 3], "cells": []}"#).is_err());
        assert!(Shape::from_json(r#"{"cells": [[0, 99999999999]]}"#).is_err());
        let round = Shape::from_json(&s.to_json().to_string()).unwrap();
        assert_eq!(round, s);
    }
}
