//! Simple undirected graphs on at most 64 vertices, stored as one
//! neighbourhood bitmask per vertex.

mod canon;
mod generators;
mod graph6;

use std::fmt;

use thiserror::Error;

pub use canon::{
    are_isomorphic, canonical_form, canonical_form_colored, canonical_labeling, refine_partition,
    CanonicalForm,
};
pub use generators::{complete, cycle, path, petersen, rooks, star, wheel};
pub use graph6::{parse_graph6, to_graph6, Graph6Error, Graph6Text};

/// Largest supported vertex count: one machine word per neighbourhood row.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop requested at vertex {0}")]
    SelfLoop(usize),
    #[error("induced subgraph of an empty vertex set")]
    EmptyKeepSet,
    #[error("product of {left} and {right} vertices exceeds 64")]
    ProductTooLarge { left: usize, right: usize },
    #[error("generator size {0} exceeds the 64-vertex cap or is too small")]
    GeneratorSize(usize),
}

/// A set of vertices of some graph; bit `i` set means vertex `i` is present.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest vertex in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Simple undirected graph; `adj[u]` is the open neighbourhood of `u`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Build a graph from an edge list. Duplicate pairs collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    /// Build directly from neighbourhood rows. The rows must already be
    /// symmetric and loop-free.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let full = VertexSet::full(n).0;
        for (u, &row) in rows.iter().enumerate() {
            if row & (1u64 << u) != 0 {
                return Err(GraphError::SelfLoop(u));
            }
            if row & !full != 0 {
                let vertex = (row & !full).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            for v in VertexSet(row) {
                if rows[v] & (1u64 << u) == 0 {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    /// Rows known to be valid; used by internal constructions.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { adj: rows }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for &x in &[u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1u64 << v) != 0
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u])
    }

    #[inline]
    pub fn closed_neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u] | (1u64 << u))
    }

    /// Open and closed neighbourhood of `u`.
    pub fn neighborhoods(&self, u: usize) -> Result<(VertexSet, VertexSet), GraphError> {
        if u >= self.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: u,
                n: self.n(),
            });
        }
        Ok((self.neighbors(u), self.closed_neighbors(u)))
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in VertexSet(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees = self.adj.iter().map(|r| r.count_ones() as usize);
        DegreeStats {
            min_degree: degrees.clone().min().unwrap_or(0),
            max_degree: degrees.max().unwrap_or(0),
            edges: self.edge_count(),
        }
    }

    pub fn min_degree(&self) -> usize {
        self.degree_stats().min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.degree_stats().max_degree
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= within.0 & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    pub fn is_connected(&self) -> bool {
        self.component_within(0, self.vertices()) == self.vertices()
    }

    /// Connected components, each listed as a vertex set, in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.component_within(v, rest);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Vertices whose removal leaves the remaining graph connected.
    pub fn non_cut_vertices(&self) -> VertexSet {
        let all = self.vertices();
        if self.n() == 1 {
            return all;
        }
        let mut out = VertexSet::EMPTY;
        for v in 0..self.n() {
            let rest = all.without(v);
            let start = rest.first().expect("n >= 2");
            if self.component_within(start, rest) == rest {
                out = out.with(v);
            }
        }
        out
    }

    /// Subgraph induced by `keep`, relabelled in ascending old-index order.
    /// The second value maps each new index to its old vertex.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if keep.is_empty() {
            return Err(GraphError::EmptyKeepSet);
        }
        if !keep.is_subset(self.vertices()) {
            let vertex = keep.difference(self.vertices()).first().unwrap_or(0);
            return Err(GraphError::VertexOutOfRange {
                vertex,
                n: self.n(),
            });
        }
        let old: Vec<usize> = keep.iter().collect();
        let mut new_index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let rows = old
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & keep.0)
                    .iter()
                    .fold(0u64, |acc, w| acc | (1u64 << new_index[w]))
            })
            .collect();
        Ok((Graph::from_rows_unchecked(rows), old))
    }

    /// Delete one vertex.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(self.induced_subgraph(self.vertices().without(v))?.0)
    }

    /// Relabel vertices: old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut rows = vec![0u64; self.n()];
        for (u, &row) in self.adj.iter().enumerate() {
            rows[perm[u]] = VertexSet(row)
                .iter()
                .fold(0u64, |acc, w| acc | (1u64 << perm[w]));
        }
        Graph::from_rows_unchecked(rows)
    }

    /// Cartesian product with `(a, b)` at index `a * h.n() + b`.
    pub fn cartesian_product(&self, h: &Graph) -> Result<Graph, GraphError> {
        let (gn, hn) = (self.n(), h.n());
        if gn * hn > MAX_VERTICES {
            return Err(GraphError::ProductTooLarge {
                left: gn,
                right: hn,
            });
        }
        let mut rows = vec![0u64; gn * hn];
        for a in 0..gn {
            for b in 0..hn {
                let mut row = 0u64;
                for y in h.neighbors(b) {
                    row |= 1u64 << (a * hn + y);
                }
                for x in self.neighbors(a) {
                    row |= 1u64 << (x * hn + b);
                }
                rows[a * hn + b] = row;
            }
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Disjoint union helper used for building test families.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let shift = self.n();
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << shift));
        Ok(Graph::from_rows_unchecked(rows))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Minimum degree, maximum degree and edge count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub edges: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_and_errors() {
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((0..3).all(|v| k3.degree(v) == 2));
        let dup = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);

        assert_eq!(Graph::new(0, &[]), Err(GraphError::VertexCount(0)));
        assert_eq!(Graph::new(65, &[]), Err(GraphError::VertexCount(65)));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(Graph::new(64, &[(0, 63)]).is_ok());
    }

    #[test]
    fn rows_are_validated() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0]).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        let k3 = complete(3).unwrap();
        let (open, closed) = k3.neighborhoods(0).unwrap();
        assert_eq!(open, VertexSet::from_vertices([1, 2]));
        assert_eq!(closed, VertexSet::from_vertices([0, 1, 2]));

        let c4 = cycle(4).unwrap();
        let (open, closed) = c4.neighborhoods(0).unwrap();
        assert_eq!(open, VertexSet::from_vertices([1, 3]));
        assert_eq!(closed, VertexSet::from_vertices([0, 1, 3]));

        let r3 = rooks(3).unwrap();
        assert!((0..9).all(|v| r3.neighborhoods(v).unwrap().0.len() == 4));
        assert!(r3.neighborhoods(9).is_err());
    }

    #[test]
    fn degree_stat_examples() {
        let s = |g: Graph| {
            let d = g.degree_stats();
            (d.min_degree, d.max_degree, d.edges)
        };
        assert_eq!(s(cycle(9).unwrap()), (2, 2, 9));
        assert_eq!(s(petersen()), (3, 3, 15));
        assert_eq!(s(rooks(3).unwrap()), (4, 4, 18));
    }

    #[test]
    fn connectivity_examples() {
        assert!(Graph::new(1, &[]).unwrap().is_connected());
        assert!(!Graph::new(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(rooks(3).unwrap().is_connected());
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components().len(), 2);
    }

    #[test]
    fn non_cut_vertices_of_a_path() {
        let p = path(4).unwrap();
        assert_eq!(p.non_cut_vertices(), VertexSet::from_vertices([0, 3]));
        assert_eq!(cycle(5).unwrap().non_cut_vertices(), VertexSet::full(5));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = complete(3).unwrap();
        let (k2, map) = k3.induced_subgraph(VertexSet::from_vertices([0, 1])).unwrap();
        assert_eq!(k2, complete(2).unwrap());
        assert_eq!(map, vec![0, 1]);

        let p = petersen();
        for v in 0..10 {
            let keep = p.vertices().difference(p.closed_neighbors(v));
            assert_eq!(p.induced_subgraph(keep).unwrap().0.n(), 6);
        }

        let r3 = rooks(3).unwrap();
        for v in 0..9 {
            let keep = r3.vertices().difference(r3.closed_neighbors(v));
            let (h, _) = r3.induced_subgraph(keep).unwrap();
            assert!(are_isomorphic(&h, &cycle(4).unwrap()));
        }
        assert_eq!(
            k3.induced_subgraph(VertexSet::EMPTY),
            Err(GraphError::EmptyKeepSet)
        );
    }

    #[test]
    fn product_examples() {
        let k2 = complete(2).unwrap();
        let sq = k2.cartesian_product(&k2).unwrap();
        assert!(are_isomorphic(&sq, &cycle(4).unwrap()));

        let k3 = complete(3).unwrap();
        let r = k3.cartesian_product(&k3).unwrap();
        assert_eq!(r.degree_stats(), DegreeStats { min_degree: 4, max_degree: 4, edges: 18 });
        assert_eq!(r, rooks(3).unwrap());

        let h = petersen();
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(k1.cartesian_product(&h).unwrap(), h);

        assert!(matches!(
            complete(9).unwrap().cartesian_product(&complete(8).unwrap()),
            Err(GraphError::ProductTooLarge { .. })
        ));
    }

    #[test]
    fn product_degree_law_on_small_factors() {
        // every pair of factors drawn from all labelled graphs on <= 3
        // vertices plus a few 4- and 5-vertex shapes
        let mut factors = Vec::new();
        for n in 1..=3usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                factors.push(Graph::new(n, &edges).unwrap());
            }
        }
        factors.extend([
            cycle(4).unwrap(),
            path(4).unwrap(),
            star(4).unwrap(),
            cycle(5).unwrap(),
            complete(5).unwrap(),
            wheel(5).unwrap(),
        ]);
        for g in &factors {
            for h in &factors {
                let p = g.cartesian_product(h).unwrap();
                for a in 0..g.n() {
                    for b in 0..h.n() {
                        assert_eq!(p.degree(a * h.n() + b), g.degree(a) + h.degree(b));
                    }
                }
            }
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            g.add_edge(u, v).unwrap();
                        }
                        i += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn induced_subgraph_preserves_adjacency(g in arb_graph(12), keep_bits in any::<u64>()) {
            let keep = VertexSet(keep_bits & g.vertices().0);
            prop_assume!(!keep.is_empty());
            let (h, old) = g.induced_subgraph(keep).unwrap();
            prop_assert_eq!(h.n(), keep.len());
            prop_assert!(old.windows(2).all(|w| w[0] < w[1]));
            for i in 0..h.n() {
                for j in 0..h.n() {
                    prop_assert_eq!(h.has_edge(i, j), g.has_edge(old[i], old[j]));
                }
            }
        }

        #[test]
        fn graph_invariants_hold(g in arb_graph(16)) {
            for u in 0..g.n() {
                prop_assert!(!g.has_edge(u, u));
                for v in g.neighbors(u) {
                    prop_assert!(v < g.n());
                    prop_assert!(g.has_edge(v, u));
                }
            }
            prop_assert_eq!(g.edges().len(), g.edge_count());
        }
    }
}
