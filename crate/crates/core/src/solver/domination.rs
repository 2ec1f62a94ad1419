//! Exact domination number by iterative deepening on the set size.

use crate::graph::{Graph, VertexSet};

pub fn is_dominating(g: &Graph, set: VertexSet) -> bool {
    let covered = set
        .iter()
        .fold(VertexSet::EMPTY, |acc, v| acc.union(g.closed_neighbors(v)));
    covered == VertexSet::full(g.n())
}

pub fn domination_number(g: &Graph) -> usize {
    min_dominating_set(g).len()
}

/// A smallest dominating set. Among sets of minimum size, the one found
/// first by the search is returned, which is deterministic for a given graph.
pub fn min_dominating_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_neighbors(v)).collect();
    let greedy = greedy_dominating(&closed, n);
    let max_closed = closed.iter().map(|c| c.len()).max().unwrap_or(1);
    let lower = n.div_ceil(max_closed);
    for size in lower..greedy.len() {
        let mut search = Search {
            closed: &closed,
            max_closed,
            found: None,
        };
        if search.run(VertexSet::full(n), VertexSet::EMPTY, size) {
            return search.found.expect("successful search records a set");
        }
    }
    greedy
}

fn greedy_dominating(closed: &[VertexSet], n: usize) -> VertexSet {
    let mut undominated = VertexSet::full(n);
    let mut chosen = VertexSet::EMPTY;
    while !undominated.is_empty() {
        let best = (0..n)
            .max_by_key(|&v| (closed[v].intersection(undominated).len(), std::cmp::Reverse(v)))
            .expect("graph has vertices");
        chosen = chosen.with(best);
        undominated = undominated.difference(closed[best]);
    }
    chosen
}

struct Search<'a> {
    closed: &'a [VertexSet],
    max_closed: usize,
    found: Option<VertexSet>,
}

impl Search<'_> {
    fn run(&mut self, undominated: VertexSet, chosen: VertexSet, left: usize) -> bool {
        if undominated.is_empty() {
            self.found = Some(chosen);
            return true;
        }
        if left == 0 || undominated.len() > left * self.max_closed {
            return false;
        }
        // branch on the undominated vertex with the fewest ways to be covered;
        // its dominator must be one of its closed neighbours
        let pivot = undominated
            .iter()
            .min_by_key(|&u| self.closed[u].len())
            .expect("nonempty");
        for v in self.closed[pivot] {
            if self.run(undominated.difference(self.closed[v]), chosen.with(v), left - 1) {
                return true;
            }
        }
        false
    }
}
