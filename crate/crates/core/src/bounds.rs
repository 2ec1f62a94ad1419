//! Certified shortcuts for the lazy cop number and the pipeline that uses
//! them to cap the exact search.
//!
//! Each shortcut only ever lowers the largest `k` the ascent has to try;
//! the answer for every `k` that is actually tried still comes from the
//! solver. Running [`classify`] with and without filters must agree.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::solver::{domination_number, is_dismantlable, Budget, CopAscent, SolveError, SolveOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VerdictKind {
    PendantReduced,
    SandwichExact,
    DeltaImpliesLazyLE2,
    DeltaImpliesLazyLE3,
    NoFilter,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 5] = [
        VerdictKind::PendantReduced,
        VerdictKind::SandwichExact,
        VerdictKind::DeltaImpliesLazyLE2,
        VerdictKind::DeltaImpliesLazyLE3,
        VerdictKind::NoFilter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::PendantReduced => "pendant_reduced",
            VerdictKind::SandwichExact => "sandwich_exact",
            VerdictKind::DeltaImpliesLazyLE2 => "delta_lazy_le2",
            VerdictKind::DeltaImpliesLazyLE3 => "delta_lazy_le3",
            VerdictKind::NoFilter => "no_filter",
        }
    }

    /// The fact the verdict rests on.
    pub fn provenance(self) -> &'static str {
        match self {
            VerdictKind::PendantReduced => "deleting a degree-1 vertex keeps the lazy cop number",
            VerdictKind::SandwichExact => "c <= c_L <= gamma, all smaller k lost",
            VerdictKind::DeltaImpliesLazyLE2 => "max degree >= n - 4 gives c_L <= 2",
            VerdictKind::DeltaImpliesLazyLE3 => "max degree >= n - 9 gives c_L <= 3",
            VerdictKind::NoFilter => "no shortcut applies",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub kind: VerdictKind,
    /// The bound implied, the exact value for `SandwichExact`, or the number
    /// of deleted vertices for `PendantReduced`. `None` only for `NoFilter`.
    pub value: Option<usize>,
    pub provenance: String,
}

impl BoundVerdict {
    fn new(kind: VerdictKind, value: Option<usize>) -> Self {
        BoundVerdict {
            kind,
            value,
            provenance: kind.provenance().to_string(),
        }
    }

    pub fn fired(&self) -> bool {
        self.kind != VerdictKind::NoFilter
    }
}

/// Delete degree-1 vertices until none is left or one vertex remains.
/// Returns the reduced graph and how many vertices were deleted.
pub fn strip_pendants(g: &Graph) -> (Graph, usize) {
    let mut cur = g.clone();
    let mut removed = 0;
    while cur.n() > 1 {
        let Some(leaf) = (0..cur.n()).find(|&v| cur.degree(v) == 1) else {
            break;
        };
        cur = cur.remove_vertex(leaf).expect("n > 1");
        removed += 1;
    }
    (cur, removed)
}

fn delta_filter(g: &Graph, slack: usize, bound: usize, kind: VerdictKind) -> BoundVerdict {
    if g.max_degree() + slack >= g.n() {
        BoundVerdict::new(kind, Some(bound))
    } else {
        BoundVerdict::new(VerdictKind::NoFilter, None)
    }
}

/// Fires when the maximum degree is at least `n - 4`.
pub fn delta_filter_lazy2(g: &Graph) -> BoundVerdict {
    delta_filter(g, 4, 2, VerdictKind::DeltaImpliesLazyLE2)
}

/// Fires when the maximum degree is at least `n - 9`.
pub fn delta_filter_lazy3(g: &Graph) -> BoundVerdict {
    delta_filter(g, 9, 3, VerdictKind::DeltaImpliesLazyLE3)
}

/// Unproven generalisation of the two degree filters: maximum degree at
/// least `n - k^2` would give `c_L <= k`. Only for gathering conjectural
/// evidence; never used by [`classify`].
pub fn experimental_delta_filter(g: &Graph, k: usize) -> bool {
    g.max_degree() + k * k >= g.n()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub outcome: SolveOutcome,
    /// Shortcuts that fired, empty on the unfiltered path.
    pub verdicts: Vec<BoundVerdict>,
}

impl Classification {
    pub fn fired(&self, kind: VerdictKind) -> bool {
        self.verdicts.iter().any(|v| v.kind == kind)
    }
}

/// `c`, `c_L` and `gamma` of a connected graph. Capture times and witnesses
/// cover only the solves that were run on `g` itself.
pub fn classify(g: &Graph, use_filters: bool, budget: &Budget) -> Result<Classification, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Disconnected {
            components: g.components().len(),
        });
    }
    let gamma = domination_number(g);
    let mut on_g = CopAscent::new(g, *budget);
    let mut verdicts = Vec::new();

    let (c, cl) = if use_filters {
        let (reduced, removed) = strip_pendants(g);
        if removed > 0 {
            verdicts.push(BoundVerdict::new(VerdictKind::PendantReduced, Some(removed)));
        }
        let cl = if reduced.n() == 1 {
            1
        } else {
            let mut cap = gamma.min(domination_number(&reduced));
            let mut cap_kind = VerdictKind::SandwichExact;
            for filter in [delta_filter_lazy2, delta_filter_lazy3] {
                for h in [g, &reduced] {
                    let v = filter(h);
                    if let Some(bound) = v.value {
                        if !verdicts.iter().any(|w: &BoundVerdict| w.kind == v.kind) {
                            verdicts.push(v.clone());
                        }
                        if bound < cap {
                            cap = bound;
                            cap_kind = v.kind;
                        }
                    }
                }
            }
            let found = if removed > 0 {
                CopAscent::new(&reduced, *budget).first_win(true, 1, cap)?
            } else {
                on_g.first_win(true, 1, cap)?
            };
            match found {
                Some(k) => k,
                None => {
                    if cap_kind == VerdictKind::SandwichExact {
                        verdicts.push(BoundVerdict::new(VerdictKind::SandwichExact, Some(cap)));
                    }
                    cap
                }
            }
        };
        // one cop moves alone under either rule, so c = 1 exactly when
        // c_L = 1, and c_L = 2 forces c = 2
        let c = if cl <= 2 {
            cl
        } else {
            on_g.first_win(false, 2, cl)?.unwrap_or(cl)
        };
        if verdicts.is_empty() {
            verdicts.push(BoundVerdict::new(VerdictKind::NoFilter, None));
        }
        (c, cl)
    } else {
        let cl = on_g.first_win(true, 1, gamma)?.unwrap_or(gamma);
        let c = on_g.first_win(false, 1, gamma)?.unwrap_or(gamma);
        (c, cl)
    };

    let outcome = SolveOutcome {
        cop_number: c,
        lazy_cop_number: cl,
        domination_number: gamma,
        dismantlable: is_dismantlable(g),
        capture_times: on_g.capture_times(),
        witness_placements: on_g.witness_placements(),
    };
    Ok(Classification { outcome, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen, rooks, star, wheel};

    fn both(g: &Graph) -> (usize, usize, usize) {
        let a = classify(g, true, &Budget::default()).unwrap().outcome;
        let b = classify(g, false, &Budget::default()).unwrap().outcome;
        let t = (a.cop_number, a.lazy_cop_number, a.domination_number);
        assert_eq!(t, (b.cop_number, b.lazy_cop_number, b.domination_number));
        t
    }

    #[test]
    fn strip_examples() {
        let (g, removed) = strip_pendants(&star(4).unwrap());
        assert_eq!((g.n(), removed), (1, 4));
        let c9 = cycle(9).unwrap();
        assert_eq!(strip_pendants(&c9), (c9.clone(), 0));
        let (g, removed) = strip_pendants(&path(7).unwrap());
        assert_eq!((g.n(), removed), (1, 6));
        // a triangle with a tail keeps the triangle
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let (h, removed) = strip_pendants(&g);
        assert_eq!((h.n(), h.edge_count(), removed), (3, 3, 2));
    }

    #[test]
    fn filter_thresholds() {
        assert_eq!(delta_filter_lazy2(&complete(9).unwrap()).value, Some(2));
        assert_eq!(delta_filter_lazy2(&rooks(3).unwrap()).kind, VerdictKind::NoFilter);
        assert!(delta_filter_lazy2(&wheel(6).unwrap()).fired());
        for n in 3..=10 {
            assert!(delta_filter_lazy3(&cycle(n).unwrap()).fired());
        }
        // 14 vertices, maximum degree 5: a wheel hub on a 5-cycle plus a tail
        let mut edges = wheel(6).unwrap().edges();
        for v in 5..13 {
            edges.push((v, v + 1));
        }
        let g = Graph::new(14, &edges).unwrap();
        assert_eq!(g.max_degree(), 5);
        assert!(delta_filter_lazy3(&g).fired());
        assert!(!delta_filter_lazy3(&cycle(12).unwrap()).fired());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(both(&rooks(3).unwrap()), (2, 3, 3));
        assert_eq!(both(&petersen()), (3, 3, 3));
        assert_eq!(both(&path(9).unwrap()).1, 1);
        assert_eq!(both(&cycle(9).unwrap()), (2, 2, 3));
        assert_eq!(both(&complete(1).unwrap()), (1, 1, 1));
    }

    #[test]
    fn verdicts_are_recorded() {
        let cl = classify(&star(4).unwrap(), true, &Budget::default()).unwrap();
        assert!(cl.fired(VerdictKind::PendantReduced));
        let cl = classify(&rooks(3).unwrap(), true, &Budget::default()).unwrap();
        assert!(cl.fired(VerdictKind::DeltaImpliesLazyLE3));
        assert!(cl.fired(VerdictKind::SandwichExact));
        assert!(!cl.fired(VerdictKind::DeltaImpliesLazyLE2));
        let cl = classify(&rooks(3).unwrap(), false, &Budget::default()).unwrap();
        assert!(cl.verdicts.is_empty());
    }

    #[test]
    fn disconnected_is_an_error() {
        assert!(classify(&Graph::empty(2).unwrap(), true, &Budget::default()).is_err());
    }
}
