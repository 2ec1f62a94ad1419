use serde::Serialize;

use super::attractor::{WinTable, UNRESOLVED};
use super::{Rules, SolveError};
use crate::graph::Graph;

const NONE: u32 = u32::MAX;

/// Positional strategies read off a [`WinTable`].
///
/// `cop_move` is defined on every cop-win cop-turn position that is not
/// already a capture and names a successor placement of rank exactly one
/// less. `robber_move` is defined on every robber-turn position the cops
/// cannot win and names a destination that stays outside the attractor.
/// Ties go to the lexicographically least option.
#[derive(Clone, Debug)]
pub struct StrategyTable {
    n: usize,
    rules: Rules,
    cop_move: Vec<u32>,
    robber_move: Vec<u32>,
    robber_start: Vec<u32>,
}

/// `order[p]` is the position of placement `p` in lexicographic order of
/// the sorted cop tuples.
pub(crate) fn lex_order(wt: &WinTable) -> Vec<u32> {
    let mut all: Vec<(Vec<usize>, usize)> = (0..wt.placements())
        .map(|p| (wt.placement_cops(p), p))
        .collect();
    all.sort_unstable();
    let mut order = vec![0u32; all.len()];
    for (pos, (_, p)) in all.into_iter().enumerate() {
        order[p] = pos as u32;
    }
    order
}

#[allow(clippy::needless_range_loop)]
pub fn extract_strategies(g: &Graph, rules: Rules, wt: &WinTable) -> Result<StrategyTable, SolveError> {
    if wt.rules() != rules || wt.graph() != g {
        return Err(SolveError::RulesMismatch {
            table: wt.rules(),
            requested: rules,
        });
    }
    let n = g.n();
    let order = lex_order(wt);
    let mut cop_move = vec![NONE; wt.placements() * n];
    let mut robber_move = vec![NONE; wt.placements() * n];
    let mut robber_start = vec![NONE; wt.placements()];

    for p in 0..wt.placements() {
        let cops = wt.placement_set(p);
        for r in 0..n {
            let s = p * n + r;
            let rank = wt.cop_turn_rank(p, r);
            if rank != UNRESOLVED && rank > 0 {
                let best = wt
                    .successors(p)
                    .iter()
                    .map(|&q| q as usize)
                    .filter(|&q| wt.robber_turn_rank(q, r) == rank - 1)
                    .min_by_key(|&q| order[q])
                    .expect("a cop-win position has a successor one rank closer");
                cop_move[s] = best as u32;
            }
            if wt.robber_turn_rank(p, r) == UNRESOLVED && !cops.contains(r) {
                let dest = g
                    .closed_neighbors(r)
                    .iter()
                    .find(|&d| wt.cop_turn_rank(p, d) == UNRESOLVED)
                    .expect("an evading position has an evading option");
                robber_move[s] = dest as u32;
            }
        }
        if let Some(v) = (0..n).find(|&v| wt.cop_turn_rank(p, v) == UNRESOLVED) {
            robber_start[p] = v as u32;
        }
    }

    Ok(StrategyTable {
        n,
        rules,
        cop_move,
        robber_move,
        robber_start,
    })
}

impl StrategyTable {
    pub fn rules(&self) -> Rules {
        self.rules
    }

    /// Placement the cops move to from `(p, robber)`, cops to move.
    pub fn cop_move(&self, p: usize, robber: usize) -> Option<usize> {
        let q = self.cop_move[p * self.n + robber];
        (q != NONE).then_some(q as usize)
    }

    /// Vertex the robber moves to from `(p, robber)`, robber to move.
    pub fn robber_move(&self, p: usize, robber: usize) -> Option<usize> {
        let d = self.robber_move[p * self.n + robber];
        (d != NONE).then_some(d as usize)
    }

    /// Least robber start that evades placement `p` forever.
    pub fn robber_start(&self, p: usize) -> Option<usize> {
        let v = self.robber_start[p];
        (v != NONE).then_some(v as usize)
    }

    pub fn cop_move_count(&self) -> usize {
        self.cop_move.iter().filter(|&&q| q != NONE).count()
    }

    pub fn robber_move_count(&self) -> usize {
        self.robber_move.iter().filter(|&&d| d != NONE).count()
    }

    /// Table rows for dumping: cop-turn entries, then robber-turn entries.
    pub fn entries<'a>(&'a self, wt: &'a WinTable) -> StrategyEntries<'a> {
        StrategyEntries { table: self, wt }
    }
}

/// Borrowed view producing serialisable rows.
pub struct StrategyEntries<'a> {
    table: &'a StrategyTable,
    wt: &'a WinTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopMoveEntry {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub rank: u32,
    pub next: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RobberMoveEntry {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub next: usize,
}

impl StrategyEntries<'_> {
    pub fn cop_moves(&self) -> Vec<CopMoveEntry> {
        let n = self.table.n;
        let mut out = Vec::new();
        for p in 0..self.wt.placements() {
            for r in 0..n {
                if let Some(q) = self.table.cop_move(p, r) {
                    out.push(CopMoveEntry {
                        cops: self.wt.placement_cops(p),
                        robber: r,
                        rank: self.wt.cop_turn_rank(p, r),
                        next: self.wt.placement_cops(q),
                    });
                }
            }
        }
        out.sort_by(|a, b| (&a.cops, a.robber).cmp(&(&b.cops, b.robber)));
        out
    }

    pub fn robber_moves(&self) -> Vec<RobberMoveEntry> {
        let n = self.table.n;
        let mut out = Vec::new();
        for p in 0..self.wt.placements() {
            for r in 0..n {
                if let Some(d) = self.table.robber_move(p, r) {
                    out.push(RobberMoveEntry {
                        cops: self.wt.placement_cops(p),
                        robber: r,
                        next: d,
                    });
                }
            }
        }
        out.sort_by(|a, b| (&a.cops, a.robber).cmp(&(&b.cops, b.robber)));
        out
    }
}
