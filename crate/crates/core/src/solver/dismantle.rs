//! Corner elimination.
//!
//! A vertex `u` is a corner of the current induced subgraph if some other
//! remaining vertex `v` has a closed neighbourhood containing that of `u`.
//! Removing corners one at a time is order independent, so the greedy pass
//! below (always the least removable vertex) decides dismantlability.

use crate::graph::{Graph, VertexSet};

/// Elimination order ending with the final remaining vertex, or `None` if
/// the graph gets stuck with more than one vertex left.
pub fn dismantling_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut order = Vec::with_capacity(n);
    while alive.len() > 1 {
        let corner = alive.iter().find(|&u| {
            let nu = g.closed_neighbors(u).intersection(alive);
            alive
                .without(u)
                .iter()
                .any(|v| nu.is_subset(g.closed_neighbors(v)))
        })?;
        order.push(corner);
        alive = alive.without(corner);
    }
    order.extend(alive.iter());
    Some(order)
}

pub fn is_dismantlable(g: &Graph) -> bool {
    dismantling_order(g).is_some()
}
