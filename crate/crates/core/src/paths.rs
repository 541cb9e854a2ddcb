//! Boundary paths, segments, their SW/NE-subsegments, kissing and friendliness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{transpose_vertex, Shape, Vertex};

/// How a walk arrives at the first vertex of a sub-run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    /// The run begins at the first vertex of the walk.
    Start,
    North,
    West,
}

/// How a walk departs from the last vertex of a sub-run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    /// The run ends at the last vertex of the walk.
    End,
    East,
    South,
}

fn is_step(a: Vertex, b: Vertex) -> bool {
    b == a.south() || b == a.east()
}

/// A monotone walk taking South and East steps.
pub trait Walk {
    fn vertices(&self) -> &[Vertex];

    /// Index range of the vertices that may belong to a subsegment.
    fn inner(&self) -> std::ops::Range<usize>;

    fn entry(&self, start: usize) -> Entry {
        let w = self.vertices();
        if start == 0 {
            Entry::Start
        } else if w[start - 1] == w[start].north() {
            Entry::North
        } else {
            Entry::West
        }
    }

    fn exit(&self, end: usize) -> Exit {
        let w = self.vertices();
        if end + 1 == w.len() {
            Exit::End
        } else if w[end + 1] == w[end].east() {
            Exit::East
        } else {
            Exit::South
        }
    }

    /// The run `[start, end]` is entered from the North (or starts the walk)
    /// and left to the East (or ends the walk).
    fn is_sw_run(&self, start: usize, end: usize) -> bool {
        matches!(self.entry(start), Entry::Start | Entry::North)
            && matches!(self.exit(end), Exit::End | Exit::East)
    }

    /// The run `[start, end]` is entered from the West (or starts the walk)
    /// and left to the South (or ends the walk).
    fn is_ne_run(&self, start: usize, end: usize) -> bool {
        matches!(self.entry(start), Entry::Start | Entry::West)
            && matches!(self.exit(end), Exit::End | Exit::South)
    }

    fn position(&self, v: Vertex) -> Option<usize> {
        self.inner().find(|&k| self.vertices()[k] == v)
    }
}

/// A boundary path `(v_0, …, v_l)`, `l > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

/// A segment: a nonempty monotone walk through interior vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Segment(Vec<Vertex>);

impl Walk for Path {
    fn vertices(&self) -> &[Vertex] {
        &self.0
    }
    fn inner(&self) -> std::ops::Range<usize> {
        1..self.0.len() - 1
    }
}

impl Walk for Segment {
    fn vertices(&self) -> &[Vertex] {
        &self.0
    }
    fn inner(&self) -> std::ops::Range<usize> {
        0..self.0.len()
    }
}

impl Path {
    pub fn new(shape: &Shape, vertices: Vec<Vertex>) -> Result<Path> {
        let bad = |m: &str| Err(Error::BadWalk(m.into()));
        if vertices.len() < 2 {
            return bad("a path needs at least two vertices");
        }
        if !vertices.windows(2).all(|w| is_step(w[0], w[1])) {
            return bad("steps must go South or East");
        }
        let last = vertices.len() - 1;
        for (k, &v) in vertices.iter().enumerate() {
            let ok = if k == 0 || k == last {
                shape.is_boundary(v)
            } else {
                shape.is_interior(v)
            };
            if !ok {
                return bad("endpoints must be boundary and inner vertices interior");
            }
        }
        Ok(Path(vertices))
    }

    pub fn is_horizontal(&self) -> bool {
        self.0.windows(2).all(|w| w[1] == w[0].east())
    }

    pub fn is_vertical(&self) -> bool {
        self.0.windows(2).all(|w| w[1] == w[0].south())
    }

    /// Horizontal and vertical paths are cone points of the nonkissing complex.
    pub fn is_cone(&self) -> bool {
        self.is_horizontal() || self.is_vertical()
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn transpose(&self) -> Path {
        Path(self.0.iter().map(|&v| transpose_vertex(v)).collect())
    }
}

impl Segment {
    pub fn new(shape: &Shape, vertices: Vec<Vertex>) -> Result<Segment> {
        if vertices.is_empty() {
            return Err(Error::BadWalk("a segment needs at least one vertex".into()));
        }
        if !vertices.windows(2).all(|w| is_step(w[0], w[1])) {
            return Err(Error::BadWalk("steps must go South or East".into()));
        }
        if !vertices.iter().all(|&v| shape.is_interior(v)) {
            return Err(Error::BadWalk("segment vertices must be interior".into()));
        }
        Ok(Segment(vertices))
    }

    pub(crate) fn from_run(vertices: &[Vertex]) -> Segment {
        Segment(vertices.to_vec())
    }

    pub fn lazy(v: Vertex) -> Segment {
        Segment(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_lazy(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    /// `t` occurs as a contiguous run of `self`.
    pub fn contains_segment(&self, t: &Segment) -> bool {
        self.0.windows(t.0.len()).any(|w| w == t.0.as_slice())
    }

    pub fn transpose(&self) -> Segment {
        Segment(self.0.iter().map(|&v| transpose_vertex(v)).collect())
    }
}

fn fmt_walk(f: &mut fmt::Formatter<'_>, vs: &[Vertex]) -> fmt::Result {
    write!(f, "[")?;
    for (k, v) in vs.iter().enumerate() {
        if k > 0 {
            write!(f, " ")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "]")
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_walk(f, &self.0)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_walk(f, &self.0)
    }
}

/// All boundary paths of the shape in canonical order.
pub fn enumerate_paths(shape: &Shape) -> Vec<Path> {
    fn extend(shape: &Shape, walk: &mut Vec<Vertex>, out: &mut Vec<Path>) {
        let v = *walk.last().unwrap();
        for w in [v.south(), v.east()] {
            if !shape.contains(w) {
                continue;
            }
            walk.push(w);
            if shape.is_interior(w) {
                extend(shape, walk, out);
            } else {
                out.push(Path(walk.clone()));
            }
            walk.pop();
        }
    }
    let mut out = Vec::new();
    for v in shape.vertices().filter(|&v| shape.is_boundary(v)) {
        extend(shape, &mut vec![v], &mut out);
    }
    out.sort();
    out
}

/// All segments of the shape in canonical order.
pub fn enumerate_segments(shape: &Shape) -> Vec<Segment> {
    fn extend(shape: &Shape, walk: &mut Vec<Vertex>, out: &mut Vec<Segment>) {
        out.push(Segment(walk.clone()));
        let v = *walk.last().unwrap();
        for w in [v.south(), v.east()] {
            if shape.is_interior(w) {
                walk.push(w);
                extend(shape, walk, out);
                walk.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &v in shape.interior() {
        extend(shape, &mut vec![v], &mut out);
    }
    out.sort();
    out
}

/// `s∘t`, when the first vertex of `t` is immediately South or East of the last vertex of `s`.
pub fn concatenate(s: &Segment, t: &Segment) -> Option<Segment> {
    if !is_step(s.last(), t.first()) {
        return None;
    }
    let mut vs = s.0.clone();
    vs.extend_from_slice(&t.0);
    Some(Segment(vs))
}

/// SW-subsegments: `A_s` for a segment, `A_p` for a path.
pub fn sw_subsegments<W: Walk>(w: &W) -> Vec<Segment> {
    runs(w, |a, b| w.is_sw_run(a, b))
}

/// NE-subsegments: `K_s` for a segment, `K_p` for a path.
pub fn ne_subsegments<W: Walk>(w: &W) -> Vec<Segment> {
    runs(w, |a, b| w.is_ne_run(a, b))
}

fn runs<W: Walk>(w: &W, keep: impl Fn(usize, usize) -> bool) -> Vec<Segment> {
    let range = w.inner();
    let mut out = Vec::new();
    for a in range.clone() {
        for b in a..range.end {
            if keep(a, b) {
                out.push(Segment::from_run(&w.vertices()[a..=b]));
            }
        }
    }
    out.sort();
    out
}

/// A maximal common run: `p[a..=b]` equals `q[c..=d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommonRun {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Maximal common runs of two walks, restricted to their inner ranges, in order along `p`.
pub fn common_runs<P: Walk, Q: Walk>(p: &P, q: &Q) -> Vec<CommonRun> {
    let (pv, qv) = (p.vertices(), q.vertices());
    let (pr, qr) = (p.inner(), q.inner());
    let mut out = Vec::new();
    let mut a = pr.start;
    while a < pr.end {
        let Some(c) = q.position(pv[a]) else {
            a += 1;
            continue;
        };
        let (mut b, mut d) = (a, c);
        while b + 1 < pr.end && d + 1 < qr.end && pv[b + 1] == qv[d + 1] {
            b += 1;
            d += 1;
        }
        out.push(CommonRun { a, b, c, d });
        a = b + 1;
    }
    out
}

/// Which argument plays the West/South role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    First,
    Second,
}

/// `p` and `q` kiss along `segment`; `west_south` enters from the West and leaves South.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KissWitness {
    pub segment: Segment,
    pub west_south: Role,
}

fn strict_ws<W: Walk>(w: &W, a: usize, b: usize) -> bool {
    w.entry(a) == Entry::West && w.exit(b) == Exit::South
}

fn strict_ne<W: Walk>(w: &W, a: usize, b: usize) -> bool {
    w.entry(a) == Entry::North && w.exit(b) == Exit::East
}

/// All kissing witnesses, in order along `p`.
pub fn kissing_witnesses<P: Walk, Q: Walk>(p: &P, q: &Q) -> Vec<KissWitness> {
    let mut out = Vec::new();
    for run in common_runs(p, q) {
        let role = if strict_ws(p, run.a, run.b) && strict_ne(q, run.c, run.d) {
            Some(Role::First)
        } else if strict_ne(p, run.a, run.b) && strict_ws(q, run.c, run.d) {
            Some(Role::Second)
        } else {
            None
        };
        if let Some(west_south) = role {
            out.push(KissWitness {
                segment: Segment::from_run(&p.vertices()[run.a..=run.b]),
                west_south,
            });
        }
    }
    out
}

/// The first kissing witness in canonical order, if any.
pub fn kissing<P: Walk, Q: Walk>(p: &P, q: &Q) -> Option<KissWitness> {
    kissing_witnesses(p, q).into_iter().next()
}

/// `s` and `t` are friendly along `segment`: the member named by `ne_side`
/// has it as an NE-subsegment and the other as an SW-subsegment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendlyWitness {
    pub segment: Segment,
    pub ne_side: Role,
}

pub fn friendly(s: &Segment, t: &Segment) -> Option<FriendlyWitness> {
    for run in common_runs(s, t) {
        let u = || Segment::from_run(&s.0[run.a..=run.b]);
        if s.is_ne_run(run.a, run.b) && t.is_sw_run(run.c, run.d) {
            return Some(FriendlyWitness {
                segment: u(),
                ne_side: Role::First,
            });
        }
        if s.is_sw_run(run.a, run.b) && t.is_ne_run(run.c, run.d) {
            return Some(FriendlyWitness {
                segment: u(),
                ne_side: Role::Second,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i32, y: i32) -> Vertex {
        Vertex::new(x, y)
    }

    #[test]
    fn counts_on_small_rectangles() {
        let r11 = Shape::rect(1, 1).unwrap();
        assert!(enumerate_paths(&r11).iter().all(Path::is_cone));
        let r22 = Shape::rect(2, 2).unwrap();
        let turning: Vec<Path> = enumerate_paths(&r22).into_iter().filter(|p| !p.is_cone()).collect();
        assert_eq!(turning.len(), 2);
        assert_eq!(enumerate_segments(&r22).len(), 1);
        let r23 = Shape::rect(2, 3).unwrap();
        assert_eq!(enumerate_paths(&r23).iter().filter(|p| !p.is_cone()).count(), 5);
        for n in 2..7 {
            let segs = enumerate_segments(&Shape::rect(2, n).unwrap());
            assert_eq!(segs.len() as u32, n * (n - 1) / 2);
        }
    }

    #[test]
    fn concatenation() {
        let (s1, s2) = (Segment::lazy(v(1, 1)), Segment::lazy(v(2, 1)));
        assert_eq!(concatenate(&s1, &s2), Some(Segment(vec![v(1, 1), v(2, 1)])));
        assert_eq!(concatenate(&s2, &s1), None);
    }

    #[test]
    fn sw_ne_examples() {
        let s12 = Segment(vec![v(1, 1), v(2, 1)]);
        assert_eq!(sw_subsegments(&s12), vec![Segment::lazy(v(1, 1)), s12.clone()]);
        assert_eq!(ne_subsegments(&s12), vec![s12.clone(), Segment::lazy(v(2, 1))]);
        let lazy = Segment::lazy(v(1, 1));
        assert_eq!(sw_subsegments(&lazy), vec![lazy.clone()]);
        assert_eq!(ne_subsegments(&lazy), vec![lazy.clone()]);
        // Initial path of (1,1) in rect(2,3).
        let r = Shape::rect(2, 3).unwrap();
        let q = Path::new(&r, vec![v(0, 1), v(1, 1), v(1, 0)]).unwrap();
        assert!(sw_subsegments(&q).is_empty());
        assert_eq!(ne_subsegments(&q), vec![lazy]);
    }

    #[test]
    fn kissing_examples() {
        let r = Shape::rect(2, 2).unwrap();
        let ws = Path::new(&r, vec![v(0, 1), v(1, 1), v(1, 0)]).unwrap();
        let ne = Path::new(&r, vec![v(1, 2), v(1, 1), v(2, 1)]).unwrap();
        let w = kissing(&ws, &ne).unwrap();
        assert_eq!(w.segment, Segment::lazy(v(1, 1)));
        assert_eq!(w.west_south, Role::First);
        assert_eq!(kissing(&ne, &ws).unwrap().west_south, Role::Second);
        for p in enumerate_paths(&r) {
            assert!(kissing(&p, &p).is_none());
        }
        let horizontal = Path::new(&r, vec![v(0, 1), v(1, 1), v(2, 1)]).unwrap();
        for p in enumerate_paths(&r) {
            assert!(kissing(&horizontal, &p).is_none());
        }
    }

    #[test]
    fn friendly_examples() {
        let (s1, s2) = (Segment::lazy(v(1, 1)), Segment::lazy(v(2, 1)));
        let s12 = Segment(vec![v(1, 1), v(2, 1)]);
        assert_eq!(friendly(&s1, &s12).unwrap().segment, s1);
        assert!(friendly(&s1, &s2).is_none());
        for s in enumerate_segments(&Shape::rect(3, 4).unwrap()) {
            assert_eq!(friendly(&s, &s).unwrap().segment, s);
        }
    }

    #[test]
    fn path_validation() {
        let r = Shape::rect(2, 2).unwrap();
        assert!(Path::new(&r, vec![v(0, 1), v(1, 1)]).is_err());
        assert!(Path::new(&r, vec![v(0, 1), v(0, 2)]).is_err());
        assert!(Segment::new(&r, vec![v(0, 1)]).is_err());
        assert!(Segment::new(&r, vec![v(1, 1)]).is_ok());
    }
}
