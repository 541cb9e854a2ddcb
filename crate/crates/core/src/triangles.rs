//! The F-, H- and M-triangles, their multivariate forms, and exact checks of
//! the F=H identity and the F=M identity after clearing denominators.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::complexes::{initial_facet, isolated_lazy, CompatGraph, NonkissingComplex};
use crate::wide::WideLattice;

/// A lower-triangular coefficient matrix; `convention` names the monomial of entry `[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub convention: &'static str,
    pub coeffs: Vec<Vec<i128>>,
}

impl Triangle {
    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, row)| row.iter().skip(i + 1).all(|&c| c == 0))
    }

    /// `Σ_j coeffs[i][j]` for each `i`.
    pub fn row_sums(&self) -> Vec<i128> {
        self.coeffs.iter().map(|row| row.iter().sum()).collect()
    }
}

/// Dense bivariate polynomial, `c[a][b]` the coefficient of `x^a y^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    c: Vec<Vec<i128>>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2 { c: Vec::new() }
    }

    pub fn monomial(coeff: i128, a: usize, b: usize) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term(coeff, a, b);
        p
    }

    /// `c0 + cx·x + cy·y`.
    pub fn linear(c0: i128, cx: i128, cy: i128) -> Poly2 {
        let mut p = Poly2::monomial(c0, 0, 0);
        p.add_term(cx, 1, 0);
        p.add_term(cy, 0, 1);
        p
    }

    pub fn coeff(&self, a: usize, b: usize) -> i128 {
        self.c.get(a).and_then(|row| row.get(b)).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, coeff: i128, a: usize, b: usize) {
        if self.c.len() <= a {
            self.c.resize(a + 1, Vec::new());
        }
        if self.c[a].len() <= b {
            self.c[a].resize(b + 1, 0);
        }
        self.c[a][b] = self.c[a][b].checked_add(coeff).expect("polynomial coefficient overflow");
    }

    pub fn add_scaled(&mut self, other: &Poly2, k: i128) {
        for (a, row) in other.c.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v != 0 {
                    self.add_term(v.checked_mul(k).expect("polynomial coefficient overflow"), a, b);
                }
            }
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (a, row) in self.c.iter().enumerate() {
            for (b, &u) in row.iter().enumerate().filter(|(_, &u)| u != 0) {
                for (c, orow) in other.c.iter().enumerate() {
                    for (d, &v) in orow.iter().enumerate().filter(|(_, &v)| v != 0) {
                        out.add_term(u.checked_mul(v).expect("polynomial coefficient overflow"), a + c, b + d);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Poly2 {
        (0..n).fold(Poly2::monomial(1, 0, 0), |acc, _| acc.mul(self))
    }

    /// Nonzero terms `(a, b, coefficient)` in lexicographic order.
    pub fn terms(&self) -> Vec<(usize, usize, i128)> {
        let mut out = Vec::new();
        for (a, row) in self.c.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.push((a, b, v));
                }
            }
        }
        out
    }
}

/// Multilinear in `y_1..y_r`: `(x-degree, y-mask) → coefficient`.
pub type Multivariate = BTreeMap<(usize, u32), i128>;

/// `f[i][j]`: faces with `|F| = i` and `|F ∩ F_0| = j`, i.e. the coefficient of `x^{i−j} y^j`.
pub fn f_triangle(cat: &Catalog, nk: &NonkissingComplex) -> Triangle {
    let r = cat.rank();
    let f0 = initial_facet(cat);
    let mut coeffs = vec![vec![0i128; r + 1]; r + 1];
    for face in nk.graph().faces() {
        let mut common = face.clone();
        common.intersect_with(&f0);
        coeffs[face.count_ones(..)][common.count_ones(..)] += 1;
    }
    Triangle {
        convention: "x^(i-j) y^j",
        coeffs,
    }
}

/// `h[i][j]`: nonfriendly faces with `|F| = i` and `|ε(F)| = j`.
pub fn h_triangle(cat: &Catalog) -> Triangle {
    let r = cat.rank();
    let mut coeffs = vec![vec![0i128; r + 1]; r + 1];
    for face in CompatGraph::nonfriendly(cat).faces() {
        coeffs[face.count_ones(..)][isolated_lazy(cat, &face).count_ones(..)] += 1;
    }
    Triangle {
        convention: "x^i y^j",
        coeffs,
    }
}

/// `m[i][j] = Σ μ(Y, X)` over wide sets `Y ⊆ X` with `rk X = i`, `rk Y = j`.
pub fn m_triangle(wide: &WideLattice) -> Triangle {
    Triangle {
        convention: "x^i y^j",
        coeffs: wide.m_matrix(),
    }
}

/// `F(x, y_1, …, y_r)`, with `y_i` marking the initial path at interior vertex `i`.
pub fn f_multivariate(cat: &Catalog, nk: &NonkissingComplex) -> Multivariate {
    let mut out = Multivariate::new();
    for face in nk.graph().faces() {
        let mut mask = 0u32;
        let mut off = face.count_ones(..);
        for (i, &q) in cat.initial_paths().iter().enumerate() {
            if face.contains(q) {
                mask |= 1 << i;
                off -= 1;
            }
        }
        *out.entry((off, mask)).or_insert(0) += 1;
    }
    out
}

/// `H(x, y_1, …, y_r)`, with `y_i` marking the lazy segment at interior vertex `i`.
pub fn h_multivariate(cat: &Catalog) -> Multivariate {
    let mut out = Multivariate::new();
    for face in CompatGraph::nonfriendly(cat).faces() {
        let mask = isolated_lazy(cat, &face)
            .ones()
            .map(|s| 1u32 << cat.segment_vertices(s).next().expect("lazy segment has a vertex"))
            .fold(0, |m, b| m | b);
        *out.entry((face.count_ones(..), mask)).or_insert(0) += 1;
    }
    out
}

/// `F(x, y, …, y)`.
pub fn specialize(poly: &Multivariate, r: usize, x_counts_y: bool) -> Triangle {
    let mut coeffs = vec![vec![0i128; r + 1]; r + 1];
    for (&(a, mask), &c) in poly {
        let j = mask.count_ones() as usize;
        let i = if x_counts_y { a + j } else { a };
        coeffs[i][j] += c;
    }
    Triangle {
        convention: if x_counts_y { "x^(i-j) y^j" } else { "x^i y^j" },
        coeffs,
    }
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, t| acc * (n - t) as i128 / (t + 1) as i128)
}

/// First differing coefficient of two polynomials, as a message.
fn compare(lhs: &Poly2, rhs: &Poly2, what: &str) -> Result<(), String> {
    let mut diff = lhs.clone();
    diff.add_scaled(rhs, -1);
    match diff.terms().first() {
        None => Ok(()),
        Some(&(a, b, _)) => Err(format!(
            "{what}: coefficient of x^{a} y^{b} is {} on the left and {} on the right",
            lhs.coeff(a, b),
            rhs.coeff(a, b)
        )),
    }
}

/// `Σ h_ij (x+1)^i (y+1)^j = Σ f_ij x^{r−i} (1 + y(x+1))^j`.
pub fn verify_fh(f: &Triangle, h: &Triangle) -> Result<(), String> {
    let r = f.rank();
    let mut lhs = Poly2::zero();
    let mut rhs = Poly2::zero();
    let x1 = Poly2::linear(1, 1, 0);
    let y1 = Poly2::linear(1, 0, 1);
    // 1 + y(x+1) = 1 + y + xy
    let mut shifted = Poly2::linear(1, 0, 1);
    shifted.add_term(1, 1, 1);
    for i in 0..=r {
        for j in 0..=i {
            if h.coeffs[i][j] != 0 {
                lhs.add_scaled(&x1.pow(i).mul(&y1.pow(j)), h.coeffs[i][j]);
            }
            if f.coeffs[i][j] != 0 {
                rhs.add_scaled(&Poly2::monomial(1, r - i, 0).mul(&shifted.pow(j)), f.coeffs[i][j]);
            }
        }
    }
    compare(&lhs, &rhs, "F=H")
}

/// The multivariate F=H identity, as multilinear polynomials in `x, y_1, …, y_r`.
pub fn verify_fh_multivariate(f: &Multivariate, h: &Multivariate, r: usize) -> Result<(), String> {
    let mut lhs = Multivariate::new();
    let mut rhs = Multivariate::new();
    // (x+1)^a Π_{i∈S} (y_i + 1)
    for (&(a, mask), &c) in h {
        for sub in submasks(mask) {
            for k in 0..=a {
                *lhs.entry((k, sub)).or_insert(0) += c * binomial(a, k);
            }
        }
    }
    // x^{r−|F|} Π_{i∈I} (1 + y_i (x+1)), with |F| = a + |I|
    for (&(a, mask), &c) in f {
        let size = a + mask.count_ones() as usize;
        for sub in submasks(mask) {
            let j = sub.count_ones() as usize;
            for k in 0..=j {
                *rhs.entry((r - size + k, sub)).or_insert(0) += c * binomial(j, k);
            }
        }
    }
    lhs.retain(|_, v| *v != 0);
    rhs.retain(|_, v| *v != 0);
    if lhs == rhs {
        return Ok(());
    }
    let key = lhs
        .keys()
        .chain(rhs.keys())
        .find(|k| lhs.get(k) != rhs.get(k))
        .copied()
        .expect("maps differ");
    Err(format!(
        "multivariate F=H: coefficient of x^{} y-mask {:b} is {} on the left and {} on the right",
        key.0,
        key.1,
        lhs.get(&key).copied().unwrap_or(0),
        rhs.get(&key).copied().unwrap_or(0)
    ))
}

fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// `Σ m_ij (−1)^{i+j} x^{i−j} y^j = Σ f_ij (x+y)^{i−j} y^j (1−y)^{r−i}`.
pub fn verify_fm(f: &Triangle, m: &Triangle) -> Result<(), String> {
    let r = f.rank();
    if m.rank() != r {
        return Err(format!("F has rank {r} but M has rank {}", m.rank()));
    }
    let mut lhs = Poly2::zero();
    let mut rhs = Poly2::zero();
    let xy = Poly2::linear(0, 1, 1);
    let one_minus_y = Poly2::linear(1, 0, -1);
    for i in 0..=r {
        for j in 0..=i {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            lhs.add_term(sign * m.coeffs[i][j], i - j, j);
            if f.coeffs[i][j] != 0 {
                let term = xy.pow(i - j).mul(&Poly2::monomial(1, 0, j)).mul(&one_minus_y.pow(r - i));
                rhs.add_scaled(&term, f.coeffs[i][j]);
            }
        }
    }
    compare(&lhs, &rhs, "F=M")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Shape;

    fn tri(rows: &[&[i128]]) -> Vec<Vec<i128>> {
        let r = rows.len();
        rows.iter()
            .map(|row| {
                let mut v = row.to_vec();
                v.resize(r, 0);
                v
            })
            .collect()
    }

    #[test]
    fn rect22_oracles() {
        let cat = Catalog::new(&Shape::rect(2, 2).unwrap());
        let nk = NonkissingComplex::new(&cat).unwrap();
        let wide = WideLattice::new(&cat).unwrap();
        let f = f_triangle(&cat, &nk);
        let h = h_triangle(&cat);
        let m = m_triangle(&wide);
        // F = 1 + x + y, H = 1 + xy, M = 1 − x + xy.
        assert_eq!(f.coeffs, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(h.coeffs, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(m.coeffs, vec![vec![1, 0], vec![-1, 1]]);
        verify_fh(&f, &h).unwrap();
        verify_fm(&f, &m).unwrap();
    }

    #[test]
    fn rect23_golden() {
        let cat = Catalog::new(&Shape::rect(2, 3).unwrap());
        let nk = NonkissingComplex::new(&cat).unwrap();
        let f = f_triangle(&cat, &nk);
        let h = h_triangle(&cat);
        let m = m_triangle(&WideLattice::new(&cat).unwrap());
        assert_eq!(f.coeffs, tri(&[&[1], &[3, 2], &[2, 2, 1]]));
        assert_eq!(h.coeffs, tri(&[&[1], &[1, 2], &[0, 0, 1]]));
        assert_eq!(m.coeffs, tri(&[&[1], &[-3, 3], &[2, -3, 1]]));
        verify_fh(&f, &h).unwrap();
        verify_fm(&f, &m).unwrap();
        verify_fh_multivariate(&f_multivariate(&cat, &nk), &h_multivariate(&cat), 2).unwrap();
    }

    #[test]
    fn mismatch_is_reported() {
        let f = Triangle {
            convention: "x^(i-j) y^j",
            coeffs: vec![vec![1, 0], vec![1, 1]],
        };
        let h = Triangle {
            convention: "x^i y^j",
            coeffs: vec![vec![1, 0], vec![1, 1]],
        };
        assert!(verify_fh(&f, &h).is_err());
    }
}
