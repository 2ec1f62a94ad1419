//! Canonical labelling by equitable partition refinement and backtracking.
//!
//! The search individualises one vertex of the smallest non-singleton cell at
//! a time, refines again, and keeps the labelling whose upper-triangle
//! adjacency bits (graph6 column order) are lexicographically smallest.
//! Vertices that are twins within a cell (same neighbourhood apart from each
//! other) give isomorphic subtrees, so only one of them is branched on.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph6::{encode_bits, Graph6Text};
use super::{Graph, VertexSet};

/// Labelling-invariant encoding: the graph6 text of the canonically
/// relabelled graph. Ordered by vertex count, then by adjacency bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: usize,
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Printable graph6 bytes, size prefix included.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_graph6(&self) -> Graph6Text {
        Graph6Text::from_trusted(String::from_utf8(self.bytes.clone()).expect("graph6 is ASCII"))
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        self.to_graph6()
            .parse()
            .expect("canonical forms always hold valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", String::from_utf8_lossy(&self.bytes))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.bytes))
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form together with the labelling: vertex `v` of `g` sits at
/// position `labels[v]` in the canonical graph.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    search(g, vec![g.vertices().0])
}

/// Canonical form of a vertex-coloured graph. `cells` is an ordered
/// partition of the vertex set; isomorphisms must map each cell onto the
/// cell at the same position.
pub fn canonical_form_colored(g: &Graph, cells: &[VertexSet]) -> CanonicalForm {
    debug_assert_eq!(
        cells.iter().fold(0u64, |acc, c| {
            debug_assert_eq!(acc & c.0, 0, "cells overlap");
            acc | c.0
        }),
        g.vertices().0,
        "cells must cover the vertex set"
    );
    search(g, cells.iter().map(|c| c.0).filter(|&c| c != 0).collect()).0
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh && canonical_form(g) == canonical_form(h)
}

/// Refine an ordered partition (cells as bitmasks) until it is equitable:
/// every vertex of a cell has the same number of neighbours in every cell.
/// Split pieces are ordered by ascending neighbour count, so the result
/// depends only on the structure, never on vertex names.
pub fn refine_partition(g: &Graph, cells: &mut Vec<u64>) {
    let adj = g.rows();
    let mut next: Vec<u64> = Vec::with_capacity(g.n());
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(g.n());
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            let splitter = cells[w];
            next.clear();
            let mut split = false;
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                groups.clear();
                for v in VertexSet(cell) {
                    let count = (adj[v] & splitter).count_ones();
                    match groups.iter_mut().find(|(c, _)| *c == count) {
                        Some((_, mask)) => *mask |= 1u64 << v,
                        None => groups.push((count, 1u64 << v)),
                    }
                }
                if groups.len() == 1 {
                    next.push(cell);
                } else {
                    groups.sort_unstable_by_key(|&(c, _)| c);
                    next.extend(groups.iter().map(|&(_, m)| m));
                    split = true;
                }
            }
            if split {
                std::mem::swap(cells, &mut next);
                changed = true;
            }
            w += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best_code: Vec<u64>,
    best_order: Vec<usize>,
    code: Vec<u64>,
}

fn search(g: &Graph, cells: Vec<u64>) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let words = (n * (n - 1) / 2).div_ceil(64).max(1);
    let mut s = Search {
        g,
        best_code: Vec::new(),
        best_order: Vec::new(),
        code: vec![0; words],
    };
    s.descend(cells);
    let mut labels = vec![0; n];
    for (pos, &v) in s.best_order.iter().enumerate() {
        labels[v] = pos;
    }
    let canonical = g.permute(&labels);
    let text = encode_bits(n, &canonical);
    (
        CanonicalForm {
            n,
            bytes: text.into_bytes(),
        },
        labels,
    )
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>) {
        refine_partition(self.g, &mut cells);
        if cells.len() == self.g.n() {
            self.leaf(&cells);
            return;
        }
        let (target, cell) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(_, c)| c.count_ones())
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let adj = self.g.rows();
        let mut reps: Vec<usize> = Vec::new();
        for v in VertexSet(cell) {
            let twin = reps
                .iter()
                .any(|&r| adj[v] & !(1u64 << r) == adj[r] & !(1u64 << v));
            if !twin {
                reps.push(v);
            }
        }
        for v in reps {
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.descend(child);
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let adj = self.g.rows();
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let n = order.len();
        let have_best = !self.best_code.is_empty();
        // Build the code word by word, abandoning as soon as it exceeds the
        // incumbent.
        let mut state = if have_best {
            Ordering::Equal
        } else {
            Ordering::Less
        };
        let mut word = 0u64;
        let mut bit = 0usize;
        let mut idx = 0usize;
        for j in 1..n {
            let row = adj[order[j]];
            for &vi in &order[..j] {
                word = (word << 1) | ((row >> vi) & 1);
                bit += 1;
                if bit == 64 {
                    if !self.settle(&mut state, idx, word) {
                        return;
                    }
                    self.code[idx] = word;
                    idx += 1;
                    word = 0;
                    bit = 0;
                }
            }
        }
        if bit > 0 {
            word <<= 64 - bit;
        }
        if bit > 0 || idx == 0 {
            if !self.settle(&mut state, idx, word) {
                return;
            }
            self.code[idx] = word;
        }
        if state == Ordering::Less {
            self.best_code.clone_from(&self.code);
            self.best_order = order;
        }
    }

    /// Compare one finished word against the incumbent; false means this
    /// leaf is already worse.
    #[inline]
    fn settle(&self, state: &mut Ordering, idx: usize, word: u64) -> bool {
        if *state == Ordering::Equal {
            *state = word.cmp(&self.best_code[idx]);
        }
        *state != Ordering::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen, rooks, star};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        use rand::Rng;
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn invariant_under_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut shapes = vec![
            petersen(),
            rooks(3).unwrap(),
            cycle(9).unwrap(),
            complete(9).unwrap(),
            Graph::empty(8).unwrap(),
            star(7).unwrap(),
        ];
        for n in [5, 9, 12, 20, 40] {
            for p in [0.2, 0.5, 0.8] {
                shapes.push(random_graph(n, p, &mut rng));
            }
        }
        for g in &shapes {
            let base = canonical_form(g);
            for _ in 0..10 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.permute(&perm)), base);
            }
        }
    }

    #[test]
    fn labeling_produces_the_encoded_graph() {
        let g = petersen();
        let (form, labels) = canonical_labeling(&g);
        assert_eq!(form.to_graph(), g.permute(&labels));
        assert!(are_isomorphic(&form.to_graph(), &g));
    }

    #[test]
    fn distinguishes_small_shapes() {
        assert_ne!(canonical_form(&cycle(4).unwrap()), canonical_form(&path(4).unwrap()));
        assert!(!are_isomorphic(&complete(3).unwrap(), &path(3).unwrap()));
        let k2 = complete(2).unwrap();
        assert!(are_isomorphic(&cycle(4).unwrap(), &k2.cartesian_product(&k2).unwrap()));
        // same degree sequence, different graphs: C6 vs two triangles
        let two_triangles = complete(3).unwrap().disjoint_union(&complete(3).unwrap()).unwrap();
        assert!(!are_isomorphic(&cycle(6).unwrap(), &two_triangles));
    }

    #[test]
    fn minimal_code_for_k2_and_empty() {
        assert_eq!(canonical_form(&complete(2).unwrap()).to_string(), "A_");
        assert_eq!(canonical_form(&Graph::empty(2).unwrap()).to_string(), "A?");
        // the lexicographically smallest labelling of a path puts the
        // late columns' edges last
        let p3 = canonical_form(&path(3).unwrap()).to_graph();
        assert_eq!(p3.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn row_column_table_graph_is_r3() {
        // Vertices u v w x y a b c d arranged as
        //   u v w / x a d / y b c
        // with adjacency = same row or same column.
        let table = [[0, 1, 2], [3, 5, 8], [4, 6, 7]];
        let mut g = Graph::empty(9).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                for r2 in 0..3 {
                    for c2 in 0..3 {
                        if (r, c) != (r2, c2) && (r == r2 || c == c2) {
                            g.add_edge(table[r][c], table[r2][c2]).unwrap();
                        }
                    }
                }
            }
        }
        assert!(are_isomorphic(&g, &rooks(3).unwrap()));
    }

    #[test]
    fn colored_forms_separate_orbits() {
        // ends of a path are one orbit, the middle another
        let p = path(3).unwrap();
        let rooted = |v: usize| {
            canonical_form_colored(&p, &[VertexSet::singleton(v), p.vertices().without(v)])
        };
        assert_eq!(rooted(0), rooted(2));
        assert_ne!(rooted(0), rooted(1));
    }

    #[test]
    fn refinement_is_equitable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(10, 0.4, &mut rng);
            let mut cells = vec![g.vertices().0];
            refine_partition(&g, &mut cells);
            for &x in &cells {
                for &y in &cells {
                    let counts: Vec<u32> =
                        VertexSet(x).iter().map(|v| (g.rows()[v] & y).count_ones()).collect();
                    assert!(counts.windows(2).all(|w| w[0] == w[1]));
                }
            }
        }
    }
}
