//! Families of small shapes used for exhaustive checks.

use std::collections::{BTreeSet, HashSet};

use crate::shape::{Cell, Shape, Vertex};

type Key = (Vec<Vertex>, Vec<Vertex>);

fn key(shape: &Shape) -> Key {
    let s = shape.normalized();
    (s.vertices().collect(), s.extra_boundary().collect())
}

/// Rectangles `rect(k, m)` with `1 ≤ k ≤ m` and at most `max_interior` interior vertices.
pub fn rectangles(max_interior: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for k in 1..=(max_interior as u32 + 1) {
        for m in k..=(max_interior as u32 + 2) {
            if ((k - 1) * (m - 1)) as usize <= max_interior {
                out.push(Shape::rect(k, m).expect("small rectangle"));
            }
        }
    }
    out
}

/// Shapes generated by connected subsets of the cells of `base`, up to translation.
pub fn cell_subshapes(base: &Shape) -> Vec<Shape> {
    let cells = base.cells();
    assert!(cells.len() <= 20, "too many cells to enumerate subsets");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << cells.len()) {
        let chosen: Vec<Cell> = (0..cells.len()).filter(|&k| mask & (1 << k) != 0).map(|k| cells[k]).collect();
        if !cells_connected(&chosen) {
            continue;
        }
        let shape = Shape::from_cells(chosen, []).expect("connected cells give a valid shape");
        if seen.insert(key(&shape)) {
            out.push(shape);
        }
    }
    out
}

fn cells_connected(cells: &[Cell]) -> bool {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let mut stack = vec![cells[0]];
    let mut seen = HashSet::from([cells[0]]);
    while let Some(c) = stack.pop() {
        for n in [Cell::new(c.i + 1, c.j), Cell::new(c.i - 1, c.j), Cell::new(c.i, c.j + 1), Cell::new(c.i, c.j - 1)] {
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// Fixed polyominoes with at most `max_cells` cells, as shapes, up to translation.
pub fn polyominoes(max_cells: usize) -> Vec<Shape> {
    let mut layer: BTreeSet<Vec<Cell>> = BTreeSet::from([vec![Cell::new(0, 0)]]);
    let mut all: BTreeSet<Vec<Cell>> = BTreeSet::new();
    for _ in 1..=max_cells {
        let mut next = BTreeSet::new();
        for cells in &layer {
            let set: BTreeSet<Cell> = cells.iter().copied().collect();
            for c in cells {
                for n in [Cell::new(c.i + 1, c.j), Cell::new(c.i - 1, c.j), Cell::new(c.i, c.j + 1), Cell::new(c.i, c.j - 1)] {
                    if !set.contains(&n) {
                        let mut grown: Vec<Cell> = cells.iter().copied().chain([n]).collect();
                        normalize_cells(&mut grown);
                        next.insert(grown);
                    }
                }
            }
        }
        all.extend(std::mem::take(&mut layer));
        layer = next;
    }
    let mut seen = HashSet::new();
    all.into_iter()
        .map(|cells| Shape::from_cells(cells, []).expect("polyomino is a valid shape"))
        .filter(|s| seen.insert(key(s)))
        .collect()
}

fn normalize_cells(cells: &mut [Cell]) {
    let di = cells.iter().map(|c| c.i).min().unwrap();
    let dj = cells.iter().map(|c| c.j).min().unwrap();
    for c in cells.iter_mut() {
        *c = Cell::new(c.i - di, c.j - dj);
    }
    cells.sort();
}

/// Shapes `I ∪ N(I)` for every set `I` of 1 to `max_interior` lattice points whose
/// union of neighbourhoods is connected, with interior exactly `I`.
///
/// Vertices of degree 4 outside `I` are declared boundary.
pub fn small_interior_shapes(max_interior: usize) -> Vec<Shape> {
    let mut layer: BTreeSet<Vec<Vertex>> = BTreeSet::from([vec![Vertex::new(0, 0)]]);
    let mut all = BTreeSet::new();
    for _ in 1..=max_interior {
        let mut next = BTreeSet::new();
        for pts in &layer {
            for p in pts {
                for dx in -3i32..=3 {
                    for dy in -3i32..=3 {
                        if dx.abs() + dy.abs() > 3 {
                            continue;
                        }
                        let q = Vertex::new(p.x + dx, p.y + dy);
                        if pts.contains(&q) {
                            continue;
                        }
                        let mut grown: Vec<Vertex> = pts.iter().copied().chain([q]).collect();
                        let mx = grown.iter().map(|v| v.x).min().unwrap();
                        let my = grown.iter().map(|v| v.y).min().unwrap();
                        for v in grown.iter_mut() {
                            *v = Vertex::new(v.x - mx, v.y - my);
                        }
                        grown.sort();
                        next.insert(grown);
                    }
                }
            }
        }
        all.extend(std::mem::take(&mut layer));
        layer = next;
    }
    let mut out = Vec::new();
    for pts in all {
        let mut vertices: BTreeSet<Vertex> = pts.iter().copied().collect();
        for p in &pts {
            vertices.extend(p.neighbours());
        }
        let degree4: Vec<Vertex> = vertices
            .iter()
            .copied()
            .filter(|v| !pts.contains(v) && v.neighbours().iter().all(|n| vertices.contains(n)))
            .collect();
        if let Ok(shape) = Shape::from_vertices(vertices, degree4) {
            out.push(shape);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyomino_counts() {
        // Fixed polyominoes: 1, 2, 6, 19, 63 of sizes 1..5.
        assert_eq!(polyominoes(4).len(), 1 + 2 + 6 + 19);
        // The four fixed U-pentominoes induce the two 2x3 rectangles.
        assert_eq!(polyominoes(5).len(), 1 + 2 + 6 + 19 + 63 - 2);
    }

    #[test]
    fn small_interior_counts() {
        let shapes = small_interior_shapes(2);
        assert!(shapes.iter().all(|s| (1..=2).contains(&s.num_interior())));
        assert_eq!(shapes.iter().filter(|s| s.num_interior() == 1).count(), 1);
    }

    #[test]
    fn subshapes_of_rect() {
        let subs = cell_subshapes(&Shape::rect(2, 2).unwrap());
        // Up to translation: a cell, two dominoes, four L-trominoes, the square.
        assert_eq!(subs.len(), 8);
    }
}
