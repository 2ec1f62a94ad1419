//! Retrograde solving of the pursuit game.
//!
//! Every position is a cop placement (ranked multiset), a robber vertex and
//! the side to move. Capture positions seed the cop attractor with rank 0.
//! A cop-turn position joins as soon as one successor has joined (rank one
//! more than that successor); a robber-turn position joins once all of its
//! `deg + 1` options have joined, which an escape counter tracks. Positions
//! are processed in rank order, so cop ranks are minima and robber ranks are
//! maxima over the respective successors.

use serde::{Deserialize, Serialize};

use super::multiset::{multiset_count, rank_sorted, unrank_into};
use super::{Budget, Rules, SolveError};
use crate::graph::{Graph, VertexSet};

/// Rank of a position the cops cannot force to capture.
pub const UNRESOLVED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    Cops,
    Robber,
}

/// A position: sorted cop multiset, robber vertex, side to move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub turn: Turn,
}

/// Legal cop moves between placements, stored as a CSR adjacency over
/// placement indices. Moving at most `m` cops along edges is reversible, so
/// the same lists serve as predecessor lists.
#[derive(Clone, Debug)]
pub(crate) struct CopMoves {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    masks: Vec<u64>,
}

impl CopMoves {
    fn build(g: &Graph, rules: Rules, placements: usize, budget: &Budget) -> Result<Self, SolveError> {
        let n = g.n();
        let k = rules.cops();
        let mut offsets = Vec::with_capacity(placements + 1);
        let mut targets: Vec<u32> = Vec::new();
        let mut masks = Vec::with_capacity(placements);
        let mut cops = vec![0usize; k];
        let mut cur = vec![0usize; k];
        let mut sorted = vec![0usize; k];
        let mut local: Vec<u32> = Vec::new();
        offsets.push(0);
        for p in 0..placements {
            unrank_into(p as u64, n, &mut cops);
            masks.push(cops.iter().fold(0u64, |m, &c| m | (1u64 << c)));
            local.clear();
            expand(g, &cops, rules.movers(), 0, &mut cur, &mut sorted, &mut local);
            local.sort_unstable();
            local.dedup();
            targets.extend_from_slice(&local);
            if targets.len() as u64 > budget.max_transitions {
                return Err(SolveError::BudgetExceeded {
                    what: "transition",
                    // lower bound on what the full table would need
                    required: targets.len() as u64 * placements as u64 / (p as u64 + 1),
                    budget: budget.max_transitions,
                });
            }
            offsets.push(targets.len());
        }
        Ok(CopMoves {
            offsets,
            targets,
            masks,
        })
    }

    #[inline]
    pub(crate) fn of(&self, p: usize) -> &[u32] {
        &self.targets[self.offsets[p]..self.offsets[p + 1]]
    }

    #[inline]
    pub(crate) fn mask(&self, p: usize) -> u64 {
        self.masks[p]
    }

    pub(crate) fn transitions(&self) -> usize {
        self.targets.len()
    }
}

/// Every placement reachable by moving at most `movers_left` of the cops
/// from index `i` on.
fn expand(
    g: &Graph,
    cops: &[usize],
    movers_left: usize,
    i: usize,
    cur: &mut [usize],
    sorted: &mut [usize],
    out: &mut Vec<u32>,
) {
    if i == cops.len() {
        sorted.copy_from_slice(cur);
        sorted.sort_unstable();
        out.push(rank_sorted(sorted) as u32);
        return;
    }
    cur[i] = cops[i];
    expand(g, cops, movers_left, i + 1, cur, sorted, out);
    if movers_left > 0 {
        for w in g.neighbors(cops[i]) {
            cur[i] = w;
            expand(g, cops, movers_left - 1, i + 1, cur, sorted, out);
        }
        cur[i] = cops[i];
    }
}

/// Solved game: ranks for every position under fixed rules.
#[derive(Clone, Debug)]
pub struct WinTable {
    graph: Graph,
    rules: Rules,
    placements: usize,
    moves: CopMoves,
    cop_rank: Vec<u32>,
    robber_rank: Vec<u32>,
}

pub fn solve_attractor(g: &Graph, rules: Rules) -> Result<WinTable, SolveError> {
    solve_attractor_with(g, rules, &Budget::from_env())
}

pub fn solve_attractor_with(g: &Graph, rules: Rules, budget: &Budget) -> Result<WinTable, SolveError> {
    let n = g.n();
    let placements = multiset_count(n, rules.cops());
    let states = placements.saturating_mul(n as u64).saturating_mul(2);
    if states > budget.max_states || placements * n as u64 >= u32::MAX as u64 {
        return Err(SolveError::BudgetExceeded {
            what: "state",
            required: states,
            budget: budget.max_states,
        });
    }
    let placements = placements as usize;
    let moves = CopMoves::build(g, rules, placements, budget)?;

    let total = placements * n;
    let mut cop_rank = vec![UNRESOLVED; total];
    let mut robber_rank = vec![UNRESOLVED; total];
    let mut escapes = vec![0u8; total];
    let mut cop_frontier: Vec<u32> = Vec::new();
    let mut robber_frontier: Vec<u32> = Vec::new();

    for p in 0..placements {
        let mask = moves.mask(p);
        for r in 0..n {
            let s = p * n + r;
            if mask >> r & 1 == 1 {
                cop_rank[s] = 0;
                robber_rank[s] = 0;
                cop_frontier.push(s as u32);
                robber_frontier.push(s as u32);
            } else {
                escapes[s] = (g.degree(r) + 1) as u8;
            }
        }
    }

    let mut rank = 0u32;
    loop {
        // cop-turn positions of this rank settle robber-turn predecessors
        for &s in &cop_frontier {
            let (p, r) = (s as usize / n, s as usize % n);
            let mask = moves.mask(p);
            for prev in g.closed_neighbors(r) {
                if mask >> prev & 1 == 1 {
                    continue;
                }
                let t = p * n + prev;
                if robber_rank[t] != UNRESOLVED {
                    continue;
                }
                escapes[t] -= 1;
                if escapes[t] == 0 {
                    robber_rank[t] = rank;
                    robber_frontier.push(t as u32);
                }
            }
        }
        // robber-turn positions of this rank settle cop-turn predecessors
        let mut next: Vec<u32> = Vec::new();
        for &s in &robber_frontier {
            let (p, r) = (s as usize / n, s as usize % n);
            for &q in moves.of(p) {
                let q = q as usize;
                if moves.mask(q) >> r & 1 == 1 {
                    continue;
                }
                let t = q * n + r;
                if cop_rank[t] == UNRESOLVED {
                    cop_rank[t] = rank + 1;
                    next.push(t as u32);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        cop_frontier = next;
        robber_frontier.clear();
        rank += 1;
    }

    Ok(WinTable {
        graph: g.clone(),
        rules,
        placements,
        moves,
        cop_rank,
        robber_rank,
    })
}

impl WinTable {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    /// Number of distinct cop placements.
    pub fn placements(&self) -> usize {
        self.placements
    }

    /// Total positions, counting both sides to move.
    pub fn state_count(&self) -> usize {
        2 * self.placements * self.graph.n()
    }

    pub fn transition_count(&self) -> usize {
        self.moves.transitions()
    }

    pub fn placement_cops(&self, p: usize) -> Vec<usize> {
        let mut out = vec![0; self.rules.cops()];
        unrank_into(p as u64, self.graph.n(), &mut out);
        out
    }

    pub fn placement_set(&self, p: usize) -> VertexSet {
        VertexSet(self.moves.mask(p))
    }

    /// Index of a cop multiset (any order; it is sorted first).
    pub fn placement_index(&self, cops: &[usize]) -> Option<usize> {
        if cops.len() != self.rules.cops() || cops.iter().any(|&c| c >= self.graph.n()) {
            return None;
        }
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        Some(rank_sorted(&sorted) as usize)
    }

    /// Placements reachable in one cop turn, including passing.
    pub fn successors(&self, p: usize) -> &[u32] {
        self.moves.of(p)
    }

    #[inline]
    pub fn cop_turn_rank(&self, p: usize, robber: usize) -> u32 {
        self.cop_rank[p * self.graph.n() + robber]
    }

    #[inline]
    pub fn robber_turn_rank(&self, p: usize, robber: usize) -> u32 {
        self.robber_rank[p * self.graph.n() + robber]
    }

    /// Cop turns needed to force capture from `state`, `None` if the robber
    /// evades forever or the state is malformed.
    pub fn rank(&self, state: &GameState) -> Option<u32> {
        if state.robber >= self.graph.n() {
            return None;
        }
        let p = self.placement_index(&state.cops)?;
        let r = match state.turn {
            Turn::Cops => self.cop_turn_rank(p, state.robber),
            Turn::Robber => self.robber_turn_rank(p, state.robber),
        };
        (r != UNRESOLVED).then_some(r)
    }

    pub fn is_copwin(&self, state: &GameState) -> bool {
        self.rank(state).is_some()
    }

    /// Worst robber start against placement `p`: `None` if some start
    /// evades forever, otherwise the largest cop-turn rank.
    pub fn placement_value(&self, p: usize) -> Option<u32> {
        let mut worst = 0;
        for r in 0..self.graph.n() {
            let rank = self.cop_turn_rank(p, r);
            if rank == UNRESOLVED {
                return None;
            }
            worst = worst.max(rank);
        }
        Some(worst)
    }

    /// Placements from which the cops win against every robber start.
    pub fn winning_placements(&self) -> Vec<usize> {
        (0..self.placements)
            .filter(|&p| self.placement_value(p).is_some())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, rooks};

    #[test]
    fn k2_single_cop_wins_in_one() {
        let g = complete(2).unwrap();
        let wt = solve_attractor_with(&g, Rules::lazy(1), &Budget::default()).unwrap();
        for p in 0..2 {
            for r in 0..2 {
                let rank = wt.cop_turn_rank(p, r);
                assert!(rank <= 1);
                assert_eq!(rank == 0, p == r);
            }
        }
    }

    #[test]
    fn c4_antipode_escapes_one_cop() {
        let g = cycle(4).unwrap();
        let wt = solve_attractor_with(&g, Rules::lazy(1), &Budget::default()).unwrap();
        for c in 0..4 {
            let state = GameState {
                cops: vec![c],
                robber: (c + 2) % 4,
                turn: Turn::Cops,
            };
            assert!(!wt.is_copwin(&state));
        }
    }

    #[test]
    fn r3_two_lazy_cops_always_leave_a_safe_start() {
        let g = rooks(3).unwrap();
        let wt = solve_attractor_with(&g, Rules::lazy(2), &Budget::default()).unwrap();
        assert_eq!(wt.placements(), 45);
        for p in 0..wt.placements() {
            assert!((0..9).any(|r| wt.cop_turn_rank(p, r) == UNRESOLVED));
        }
    }

    #[test]
    fn capture_states_have_rank_zero_only() {
        let g = cycle(5).unwrap();
        let wt = solve_attractor_with(&g, Rules::standard(2), &Budget::default()).unwrap();
        for p in 0..wt.placements() {
            let set = wt.placement_set(p);
            for r in 0..5 {
                assert_eq!(wt.cop_turn_rank(p, r) == 0, set.contains(r));
                assert_eq!(wt.robber_turn_rank(p, r) == 0, set.contains(r));
            }
        }
    }

    #[test]
    fn moves_are_symmetric() {
        let g = crate::graph::petersen();
        for rules in [Rules::lazy(2), Rules::standard(2), Rules::new(3, 2).unwrap()] {
            let wt = solve_attractor_with(&g, rules, &Budget::default()).unwrap();
            for p in 0..wt.placements() {
                assert!(wt.successors(p).contains(&(p as u32)), "pass is legal");
                for &q in wt.successors(p) {
                    assert!(wt.successors(q as usize).contains(&(p as u32)));
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = rooks(4).unwrap();
        let err = solve_attractor_with(&g, Rules::lazy(4), &Budget::with_states(1000)).unwrap_err();
        match err {
            SolveError::BudgetExceeded { what, required, .. } => {
                assert_eq!(what, "state");
                assert_eq!(required, 2 * multiset_count(16, 4) * 16);
            }
            other => panic!("unexpected {other:?}"),
        }
        let tight = Budget {
            max_states: u64::MAX,
            max_transitions: 10,
        };
        assert!(matches!(
            solve_attractor_with(&g, Rules::lazy(2), &tight),
            Err(SolveError::BudgetExceeded { what: "transition", .. })
        ));
    }
}
