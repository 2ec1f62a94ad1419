//! Isomorph-free generation of connected graphs by canonical augmentation.
//!
//! Graphs on `n` vertices are grown from connected graphs on `n - 1`
//! vertices by adding vertex `n - 1` joined to a nonempty neighbour set. A
//! child is kept only when the new vertex is equivalent, under the child's
//! automorphisms, to a distinguished non-cut vertex chosen from structure
//! alone. Every connected graph then arises from exactly one parent class,
//! and the surviving children of one parent are deduplicated by canonical
//! form.

use std::collections::HashSet;
use std::io::BufRead;

use thiserror::Error;

use crate::graph::{
    canonical_form, canonical_form_colored, canonical_labeling, parse_graph6, refine_partition,
    CanonicalForm, Graph, Graph6Error, VertexSet,
};

/// Largest vertex count accepted for exhaustive generation.
pub const MAX_ENUMERATE_N: usize = 10;
/// Largest vertex count for the labelled brute-force oracle.
pub const MAX_NAIVE_N: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Constraints {
    pub n: usize,
    pub min_deg: usize,
    pub max_deg: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub connected_only: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("{n} vertices exceeds the cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),
    #[error("only connected families can be generated")]
    DisconnectedUnsupported,
}

impl Constraints {
    /// All connected graphs on `n` vertices.
    pub fn connected(n: usize) -> Self {
        Constraints {
            n,
            min_deg: 0,
            max_deg: n.saturating_sub(1),
            min_edges: 0,
            max_edges: n * n.saturating_sub(1) / 2,
            connected_only: true,
        }
    }

    /// Connected 9-vertex graphs with degrees in 2..=3 and 10..=13 edges.
    pub fn subcubic_census() -> Self {
        Constraints {
            n: 9,
            min_deg: 2,
            max_deg: 3,
            min_edges: 10,
            max_edges: 13,
            connected_only: true,
        }
    }

    pub fn validate(&self) -> Result<(), EnumerateError> {
        if !self.connected_only {
            return Err(EnumerateError::DisconnectedUnsupported);
        }
        if self.n == 0 {
            return Err(EnumerateError::Inconsistent("n must be at least 1".into()));
        }
        if self.n > MAX_ENUMERATE_N {
            return Err(EnumerateError::TooManyVertices {
                n: self.n,
                cap: MAX_ENUMERATE_N,
            });
        }
        let pairs = self.n * (self.n - 1) / 2;
        if self.min_deg > self.max_deg || self.max_deg > self.n - 1 {
            return Err(EnumerateError::Inconsistent(format!(
                "degree bounds {}..={} on {} vertices",
                self.min_deg, self.max_deg, self.n
            )));
        }
        if self.min_edges > self.max_edges || self.max_edges > pairs {
            return Err(EnumerateError::Inconsistent(format!(
                "edge bounds {}..={} with {} vertex pairs",
                self.min_edges, self.max_edges, pairs
            )));
        }
        Ok(())
    }

    pub fn admits(&self, g: &Graph) -> bool {
        let s = g.degree_stats();
        g.n() == self.n
            && s.min_degree >= self.min_deg
            && s.max_degree <= self.max_deg
            && (self.min_edges..=self.max_edges).contains(&s.edges)
            && (!self.connected_only || g.is_connected())
    }

    /// Bounds inherited by every vertex-deleted subgraph.
    fn admits_ancestor(&self, g: &Graph) -> bool {
        let s = g.degree_stats();
        s.max_degree <= self.max_deg && s.edges <= self.max_edges
    }
}

/// Every connected graph satisfying `c`, one canonical representative per
/// isomorphism class, sorted by canonical encoding.
pub fn enumerate_connected(c: &Constraints) -> Result<Vec<Graph>, EnumerateError> {
    let mut out: Vec<CanonicalForm> = Vec::new();
    for_each_connected(c, |cf, _| out.push(cf.clone()))?;
    out.sort_unstable();
    Ok(out.iter().map(CanonicalForm::to_graph).collect())
}

/// Streaming form of [`enumerate_connected`]: `f` receives each class as
/// its canonical form and representative graph. Classes arrive grouped by
/// parent, not globally sorted.
pub fn for_each_connected<F>(c: &Constraints, mut f: F) -> Result<(), EnumerateError>
where
    F: FnMut(&CanonicalForm, &Graph),
{
    c.validate()?;
    let k1 = Graph::empty(1).expect("one vertex");
    if c.n == 1 {
        if c.admits(&k1) {
            f(&canonical_form(&k1), &k1);
        }
        return Ok(());
    }
    let mut level = vec![k1];
    for size in 2..c.n {
        let mut next: Vec<CanonicalForm> = Vec::new();
        for parent in &level {
            extend(parent, c, |cf, g| {
                if c.admits_ancestor(g) {
                    next.push(cf.clone());
                }
            });
        }
        next.sort_unstable();
        level = next.iter().map(CanonicalForm::to_graph).collect();
        debug_assert!(level.iter().all(|g| g.n() == size));
    }
    for parent in &level {
        extend(parent, c, |cf, g| {
            if c.admits(g) {
                f(cf, g);
            }
        });
    }
    Ok(())
}

/// Accepted children of one parent, each class once.
fn extend<F: FnMut(&CanonicalForm, &Graph)>(parent: &Graph, c: &Constraints, mut emit: F) {
    let n = parent.n();
    let v = n;
    // existing vertices that may still gain an edge
    let open = VertexSet((0..n).filter(|&u| parent.degree(u) < c.max_deg).fold(0, |m, u| m | 1 << u));
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut rows = parent.rows().to_vec();
    rows.push(0);
    // every nonempty subset of `open`, by submask enumeration
    let mut s = open.0;
    while s != 0 {
        let deg = s.count_ones() as usize;
        let edges = parent.edge_count() + deg;
        if deg <= c.max_deg && edges <= c.max_edges {
            for (u, row) in rows.iter_mut().enumerate().take(n) {
                *row = parent.rows()[u] | (((s >> u) & 1) << v);
            }
            rows[v] = s;
            let child = Graph::from_rows_unchecked(rows.clone());
            if let Some(cf) = accept(&child, v) {
                if seen.insert(cf.clone()) {
                    emit(&cf, &child);
                }
            }
        }
        s = (s - 1) & open.0;
    }
}

/// Canonical form of `child` if `v` is a legitimate last vertex for it.
fn accept(child: &Graph, v: usize) -> Option<CanonicalForm> {
    let noncut = child.non_cut_vertices();
    // refinement orders cells by degree first, so the chosen cell only
    // holds non-cut vertices of the largest degree among them
    let top = noncut.iter().map(|u| child.degree(u)).max()?;
    if child.degree(v) != top {
        return None;
    }
    let mut cells = vec![child.vertices().0];
    refine_partition(child, &mut cells);
    let cell = cells
        .iter()
        .rev()
        .map(|&c| VertexSet(c).intersection(noncut))
        .find(|c| !c.is_empty())
        .expect("a connected graph has non-cut vertices");
    if !cell.contains(v) {
        return None;
    }
    let (cf, labels) = canonical_labeling(child);
    if cell.len() == 1 {
        return Some(cf);
    }
    let w = cell.iter().min_by_key(|&u| labels[u]).expect("nonempty");
    if w == v {
        return Some(cf);
    }
    let rest = child.vertices();
    let fix = |x: usize| canonical_form_colored(child, &[VertexSet::singleton(x), rest.without(x)]);
    (fix(v) == fix(w)).then_some(cf)
}

/// Brute-force oracle: canonical forms of all connected labelled graphs
/// on `n` vertices, sorted and deduplicated.
pub fn naive_enumerate(n: usize) -> Result<Vec<CanonicalForm>, EnumerateError> {
    if n > MAX_NAIVE_N {
        return Err(EnumerateError::TooManyVertices { n, cap: MAX_NAIVE_N });
    }
    if n == 0 {
        return Err(EnumerateError::Inconsistent("n must be at least 1".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut found: HashSet<CanonicalForm> = HashSet::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rows = vec![0u64; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        let g = Graph::from_rows_unchecked(rows);
        if g.is_connected() {
            found.insert(canonical_form(&g));
        }
    }
    let mut out: Vec<CanonicalForm> = found.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamMode {
    /// Stop after the first bad line.
    Strict,
    /// Report bad lines and keep going.
    Permissive,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineError {
    #[error("line {line}: {error}")]
    Graph6 { line: usize, error: Graph6Error },
    #[error("line {line}: read failed: {message}")]
    Io { line: usize, message: String },
}

impl LineError {
    pub fn line(&self) -> usize {
        match self {
            LineError::Graph6 { line, .. } | LineError::Io { line, .. } => *line,
        }
    }
}

/// Decoded graphs from a graph6 line stream. Blank lines are skipped;
/// line numbers in errors start at 1.
pub struct Graph6Stream<R> {
    lines: std::io::Lines<R>,
    line: usize,
    mode: StreamMode,
    failed: bool,
}

pub fn read_graph6_stream<R: BufRead>(reader: R, mode: StreamMode) -> Graph6Stream<R> {
    Graph6Stream {
        lines: reader.lines(),
        line: 0,
        mode,
        failed: false,
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<Graph, LineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed && self.mode == StreamMode::Strict {
            return None;
        }
        loop {
            self.line += 1;
            let item = match self.lines.next()? {
                Err(e) => Err(LineError::Io {
                    line: self.line,
                    message: e.to_string(),
                }),
                Ok(text) => {
                    let text = text.trim_end_matches('\r');
                    if text.trim().is_empty() {
                        continue;
                    }
                    parse_graph6(text).map_err(|error| LineError::Graph6 { line: self.line, error })
                }
            };
            self.failed |= item.is_err();
            return Some(item);
        }
    }
}
