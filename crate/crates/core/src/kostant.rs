//! Volume of the flow polytope of a shape via the Kostant partition function.
//!
//! Every boundary vertex is split into a copy emitting its outgoing edges and
//! a copy receiving its incoming edges. All emitting copies are merged into a
//! single source and all receiving copies into a single sink. Interior
//! vertices keep in-degree 2, so the volume is `K(0, 1, …, 1, −r)` with `r`
//! interior vertices: the number of ways to write that vector as a sum of
//! edge roots `e_i − e_j`, counted with edge multiplicity.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::shape::{Shape, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Interior(usize),
    Sink,
}

/// Kostant volume using the canonical vertex order as topological labelling.
pub fn kostant_volume(shape: &Shape) -> u128 {
    kostant_volume_with_order(shape, shape.interior()).expect("canonical order is topological")
}

/// Kostant volume using `order` (a permutation of the interior vertices) as
/// the topological labelling of the contracted graph.
pub fn kostant_volume_with_order(shape: &Shape, order: &[Vertex]) -> Result<u128> {
    let r = shape.num_interior();
    let pos: HashMap<Vertex, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    if order.len() != r || pos.len() != r || order.iter().any(|&v| !shape.is_interior(v)) {
        return Err(Error::Invariant("order is not a permutation of the interior".into()));
    }
    let node = |w: Vertex| match pos.get(&w) {
        Some(&k) => Node::Interior(k),
        None => Node::Sink,
    };
    let mut out_edges: Vec<Vec<Node>> = vec![Vec::new(); r];
    for (k, &v) in order.iter().enumerate() {
        for w in [v.south(), v.east()] {
            let target = node(w);
            if let Node::Interior(t) = target {
                if t <= k {
                    return Err(Error::Invariant("order is not topological".into()));
                }
            }
            out_edges[k].push(target);
        }
    }

    let mut states: HashMap<Vec<u32>, u128> = HashMap::from([(vec![0; r], 1)]);
    for (k, edges) in out_edges.iter().enumerate() {
        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        for (inflow, &count) in &states {
            let out = inflow[k] + 1;
            for split in compositions(out, edges.len()) {
                let mut state = inflow.clone();
                state[k] = 0;
                for (&amount, &target) in split.iter().zip(edges) {
                    if let Node::Interior(t) = target {
                        state[t] += amount;
                    }
                }
                let slot = next.entry(state).or_default();
                *slot = slot.checked_add(count).expect("Kostant count overflow");
            }
        }
        states = next;
    }
    Ok(states.values().sum())
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut result = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            result.push(rest);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rectangles() {
        assert_eq!(kostant_volume(&Shape::rect(1, 4).unwrap()), 1);
        assert_eq!(kostant_volume(&Shape::rect(2, 2).unwrap()), 2);
        assert_eq!(kostant_volume(&Shape::rect(2, 3).unwrap()), 5);
        assert_eq!(kostant_volume(&Shape::rect(2, 4).unwrap()), 14);
        assert_eq!(kostant_volume(&Shape::rect(3, 4).unwrap()), 462);
    }

    #[test]
    fn independent_of_labelling() {
        for (k, m) in [(2, 3), (3, 3), (3, 4), (2, 5)] {
            let s = Shape::rect(k, m).unwrap();
            let mut rows = s.interior().to_vec();
            rows.sort_by_key(|v| (-v.y, v.x));
            assert_eq!(kostant_volume_with_order(&s, &rows).unwrap(), kostant_volume(&s));
        }
    }

    #[test]
    fn rejects_non_topological_order() {
        let s = Shape::rect(2, 3).unwrap();
        let mut order = s.interior().to_vec();
        order.reverse();
        assert!(kostant_volume_with_order(&s, &order).is_err());
    }
}
