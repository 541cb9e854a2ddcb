//! Finite posets and lattices on topologically indexed elements.
//!
//! Elements are `0..n` and every relation `x < y` has `x < y` as integers, so
//! the least element of an up-closed set is its first member.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A labelled cover relation `lower ⋖ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub label: usize,
}

#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    /// `up[x]` holds every `y ≥ x`.
    up: Vec<FixedBitSet>,
    /// `down[y]` holds every `x ≤ y`.
    down: Vec<FixedBitSet>,
    covers: Vec<Cover>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Build from cover relations, whose transitive closure is the order.
    pub fn from_covers(n: usize, covers: Vec<Cover>) -> Result<Poset> {
        if covers.iter().any(|c| c.lower >= c.upper || c.upper >= n) {
            return Err(Error::Invariant("cover relations are not topologically indexed".into()));
        }
        let mut upper_adj = vec![Vec::new(); n];
        for c in &covers {
            upper_adj[c.lower].push(c.upper);
        }
        let mut up: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for x in (0..n).rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &upper_adj[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        let poset = Poset::from_up_sets(n, up, covers);
        for c in &poset.covers {
            let mut between = poset.up[c.lower].clone();
            between.intersect_with(&poset.down[c.upper]);
            if between.count_ones(..) != 2 {
                return Err(Error::Invariant("a cover relation is not a cover".into()));
            }
        }
        Ok(poset)
    }

    /// Build from an order relation given as a predicate; covers are unlabelled.
    pub fn from_relation(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if le(x, y) {
                    if y < x {
                        return Err(Error::Invariant("relation is not topologically indexed".into()));
                    }
                    up[x].insert(y);
                }
            }
            if !up[x].contains(x) {
                return Err(Error::Invariant("relation is not reflexive".into()));
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, set) in up.iter().enumerate() {
            for y in set.ones() {
                down[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        for x in 0..n {
            for y in up[x].ones().filter(|&y| y != x) {
                let mut between = up[x].clone();
                between.intersect_with(&down[y]);
                if between.count_ones(..) == 2 {
                    covers.push(Cover {
                        lower: x,
                        upper: y,
                        label: usize::MAX,
                    });
                }
            }
        }
        Ok(Poset::from_up_sets(n, up, covers))
    }

    fn from_up_sets(n: usize, up: Vec<FixedBitSet>, mut covers: Vec<Cover>) -> Poset {
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, set) in up.iter().enumerate() {
            for y in set.ones() {
                down[y].insert(x);
            }
        }
        covers.sort();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for (k, c) in covers.iter().enumerate() {
            upper_covers[c.lower].push(k);
            lower_covers[c.upper].push(k);
        }
        Poset {
            n,
            up,
            down,
            covers,
            upper_covers,
            lower_covers,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, y: usize) -> &FixedBitSet {
        &self.down[y]
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Covers with `x` as the lower element.
    pub fn upper_covers(&self, x: usize) -> impl Iterator<Item = &Cover> + '_ {
        self.upper_covers[x].iter().map(move |&k| &self.covers[k])
    }

    /// Covers with `y` as the upper element.
    pub fn lower_covers(&self, y: usize) -> impl Iterator<Item = &Cover> + '_ {
        self.lower_covers[y].iter().map(move |&k| &self.covers[k])
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&y| self.lower_covers[y].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut bounds = self.up[x].clone();
        bounds.intersect_with(&self.up[y]);
        let z = bounds.minimum()?;
        bounds.is_subset(&self.up[z]).then_some(z)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut bounds = self.down[x].clone();
        bounds.intersect_with(&self.down[y]);
        let z = bounds.maximum()?;
        bounds.is_subset(&self.down[z]).then_some(z)
    }

    /// Length of the longest chain from a minimal element to `x`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for c in &self.covers {
            // Covers are sorted by lower element, which is a topological order.
            h[c.upper] = h[c.upper].max(h[c.lower] + 1);
        }
        h
    }

    /// `μ(x, y)` for every `y ≥ x`, indexed by `y` (zero elsewhere).
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.n];
        mu[x] = 1;
        for y in self.up[x].ones().filter(|&y| y != x) {
            let mut interval = self.up[x].clone();
            interval.intersect_with(&self.down[y]);
            let sum = interval
                .ones()
                .filter(|&z| z != y)
                .try_fold(0i64, |acc, z| acc.checked_add(mu[z]))
                .expect("Möbius value overflow");
            mu[y] = -sum;
        }
        mu
    }

    /// Every pair has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        (0..self.n).all(|x| (x..self.n).all(|y| self.join(x, y).is_some() && self.meet(x, y).is_some()))
    }

    /// Linear extension chosen uniformly step by step among the minimal remaining elements.
    pub fn random_linear_extension<R: rand::Rng>(&self, rng: &mut R) -> Vec<usize> {
        let mut missing: Vec<usize> = (0..self.n).map(|y| self.lower_covers[y].len()).collect();
        let mut ready: Vec<usize> = (0..self.n).filter(|&y| missing[y] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while !ready.is_empty() {
            let pick = ready.swap_remove(rng.gen_range(0..ready.len()));
            order.push(pick);
            for &k in &self.upper_covers[pick] {
                let u = self.covers[k].upper;
                missing[u] -= 1;
                if missing[u] == 0 {
                    ready.push(u);
                }
            }
        }
        order
    }
}

/// A finite lattice with tabulated join and meet.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl Lattice {
    pub fn new(poset: Poset) -> Result<Lattice> {
        let n = poset.len();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let j = poset.join(x, y).ok_or_else(|| Error::Invariant(format!("no join of {x} and {y}")))?;
                let m = poset.meet(x, y).ok_or_else(|| Error::Invariant(format!("no meet of {x} and {y}")))?;
                join[x * n + y] = j as u32;
                meet[x * n + y] = m as u32;
            }
        }
        Ok(Lattice { poset, join, meet })
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

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(0, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.len() - 1, |acc, x| self.meet(acc, x))
    }

    /// Both semidistributive laws, checked on all triples.
    pub fn is_semidistributive(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xz = self.join(x, z);
                    if xz == self.join(y, z) && xz != self.join(self.meet(x, y), z) {
                        return false;
                    }
                    let xz = self.meet(x, z);
                    if xz == self.meet(y, z) && xz != self.meet(self.join(x, y), z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.poset.lower_covers(y).count() == 1).collect()
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.poset.upper_covers(x).count() == 1).collect()
    }

    /// The smallest congruence identifying each given pair, as the set of
    /// contracted covers (indices into [`Poset::covers`]).
    pub fn congruence(&self, pairs: &[(usize, usize)]) -> FixedBitSet {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra == rb {
                return false;
            }
            parent[ra.max(rb)] = ra.min(rb);
            true
        }
        for &(a, b) in pairs {
            union(&mut parent, a, b);
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let r = find(&mut parent, x);
                if r == x {
                    continue;
                }
                for z in 0..n {
                    changed |= union(&mut parent, self.join(x, z), self.join(r, z));
                    changed |= union(&mut parent, self.meet(x, z), self.meet(r, z));
                }
            }
            if !changed {
                break;
            }
        }
        let covers = self.poset.covers();
        let mut contracted = FixedBitSet::with_capacity(covers.len());
        for (k, c) in covers.iter().enumerate() {
            if find(&mut parent, c.lower) == find(&mut parent, c.upper) {
                contracted.insert(k);
            }
        }
        contracted
    }

    /// `con(j_*, j)` for a join-irreducible `j`.
    pub fn con_join_irreducible(&self, j: usize) -> FixedBitSet {
        let lower = self.poset.lower_covers(j).next().expect("join-irreducible").lower;
        self.congruence(&[(lower, j)])
    }

    /// `con(m, m^*)` for a meet-irreducible `m`.
    pub fn con_meet_irreducible(&self, m: usize) -> FixedBitSet {
        let upper = self.poset.upper_covers(m).next().expect("meet-irreducible").upper;
        self.congruence(&[(m, upper)])
    }

    /// Every congruence, as sets of contracted covers, sorted.
    pub fn all_congruences(&self) -> Vec<FixedBitSet> {
        use std::collections::BTreeSet;
        let generators: Vec<FixedBitSet> = self
            .join_irreducibles()
            .into_iter()
            .map(|j| self.con_join_irreducible(j))
            .collect();
        let covers = self.poset.covers();
        let pairs_of = |set: &FixedBitSet| -> Vec<(usize, usize)> {
            set.ones().map(|k| (covers[k].lower, covers[k].upper)).collect()
        };
        let bottom = FixedBitSet::with_capacity(covers.len());
        let mut seen: BTreeSet<FixedBitSet> = BTreeSet::from([bottom.clone()]);
        let mut frontier = vec![bottom];
        while let Some(theta) = frontier.pop() {
            for g in &generators {
                if g.is_subset(&theta) {
                    continue;
                }
                let mut union = theta.clone();
                union.union_with(g);
                let next = self.congruence(&pairs_of(&union));
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Lattice {
        // 0 < 1 < 2 < 4 and 0 < 3 < 4.
        let covers = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]
            .iter()
            .enumerate()
            .map(|(k, &(lower, upper))| Cover { lower, upper, label: k })
            .collect();
        Lattice::new(Poset::from_covers(5, covers).unwrap()).unwrap()
    }

    #[test]
    fn pentagon_basics() {
        let l = pentagon();
        assert_eq!(l.join(1, 3), 4);
        assert_eq!(l.meet(2, 3), 0);
        assert!(l.is_semidistributive());
        assert_eq!(l.join_irreducibles(), vec![1, 2, 3]);
        assert_eq!(l.poset().mobius_from(0)[4], 1);
        assert_eq!(l.poset().heights(), vec![0, 1, 2, 1, 3]);
    }

    #[test]
    fn pentagon_congruences() {
        // The pentagon has exactly five congruences.
        let l = pentagon();
        assert_eq!(l.all_congruences().len(), 5);
    }

    #[test]
    fn diamond_is_not_semidistributive() {
        let covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
            .iter()
            .map(|&(lower, upper)| Cover { lower, upper, label: 0 })
            .collect();
        let l = Lattice::new(Poset::from_covers(5, covers).unwrap()).unwrap();
        assert!(!l.is_semidistributive());
        // M3 is simple: two congruences.
        assert_eq!(l.all_congruences().len(), 2);
    }

    #[test]
    fn boolean_lattice_mobius() {
        let p = Poset::from_relation(8, |x, y| x & y == x).unwrap();
        let mu = p.mobius_from(0);
        for y in 0..8usize {
            let sign = if y.count_ones() % 2 == 0 { 1 } else { -1 };
            assert_eq!(mu[y], sign);
        }
        assert_eq!(p.covers().len(), 12);
    }
}
