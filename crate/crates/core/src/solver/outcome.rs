use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::attractor::solve_attractor_with;
use super::dismantle::is_dismantlable;
use super::domination::domination_number;
use super::{Budget, Rules, SolveError};
use crate::graph::Graph;

/// What one solve under fixed rules established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinSummary {
    pub rules: Rules,
    /// Lexicographically least placement winning against every robber start.
    pub witness: Option<Vec<usize>>,
    /// Best worst-case number of cop turns from a winning placement.
    pub capture_time: Option<u32>,
}

impl WinSummary {
    pub fn cops_win(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaptureTime {
    pub k: usize,
    pub m: usize,
    /// `None` when the cops lose with these rules.
    pub rounds: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub k: usize,
    pub m: usize,
    pub cops: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub cop_number: usize,
    pub lazy_cop_number: usize,
    pub domination_number: usize,
    pub dismantlable: bool,
    pub capture_times: Vec<CaptureTime>,
    pub witness_placements: Vec<Placement>,
}

fn summarize(g: &Graph, rules: Rules, budget: &Budget) -> Result<WinSummary, SolveError> {
    let wt = solve_attractor_with(g, rules, budget)?;
    let mut witness: Option<Vec<usize>> = None;
    let mut best: Option<u32> = None;
    for p in 0..wt.placements() {
        if let Some(value) = wt.placement_value(p) {
            let cops = wt.placement_cops(p);
            if witness.as_ref().is_none_or(|w| cops < *w) {
                witness = Some(cops);
            }
            best = Some(best.map_or(value, |b| b.min(value)));
        }
    }
    Ok(WinSummary {
        rules,
        witness,
        capture_time: best,
    })
}

/// Cache of solves on one graph, shared by the cop number searches so that
/// the single-cop game (identical under both rules) is solved once.
#[derive(Clone, Debug)]
pub struct CopAscent<'g> {
    graph: &'g Graph,
    budget: Budget,
    solved: BTreeMap<Rules, WinSummary>,
}

impl<'g> CopAscent<'g> {
    pub fn new(graph: &'g Graph, budget: Budget) -> Self {
        CopAscent {
            graph,
            budget,
            solved: BTreeMap::new(),
        }
    }

    pub fn summary(&mut self, rules: Rules) -> Result<&WinSummary, SolveError> {
        if !self.solved.contains_key(&rules) {
            let s = summarize(self.graph, rules, &self.budget)?;
            self.solved.insert(rules, s);
        }
        Ok(&self.solved[&rules])
    }

    pub fn wins(&mut self, rules: Rules) -> Result<bool, SolveError> {
        Ok(self.summary(rules)?.cops_win())
    }

    /// Least `k` in `from..below` for which the cops win, `None` if none do.
    pub fn first_win(&mut self, lazy: bool, from: usize, below: usize) -> Result<Option<usize>, SolveError> {
        for k in from.max(1)..below {
            let rules = if lazy { Rules::lazy(k) } else { Rules::standard(k) };
            if self.wins(rules)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn solved(&self) -> impl Iterator<Item = &WinSummary> {
        self.solved.values()
    }

    pub fn capture_times(&self) -> Vec<CaptureTime> {
        self.solved
            .values()
            .map(|s| CaptureTime {
                k: s.rules.cops(),
                m: s.rules.movers(),
                rounds: s.capture_time,
            })
            .collect()
    }

    pub fn witness_placements(&self) -> Vec<Placement> {
        self.solved
            .values()
            .filter_map(|s| {
                s.witness.clone().map(|cops| Placement {
                    k: s.rules.cops(),
                    m: s.rules.movers(),
                    cops,
                })
            })
            .collect()
    }
}

fn require_connected(g: &Graph) -> Result<(), SolveError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(SolveError::Disconnected {
            components: g.components().len(),
        })
    }
}

/// Whether `rules.cops()` cops win, with the lexicographically least
/// winning placement.
pub fn cops_can_win(g: &Graph, rules: Rules) -> Result<(bool, Option<Vec<usize>>), SolveError> {
    cops_can_win_with(g, rules, &Budget::from_env())
}

pub fn cops_can_win_with(
    g: &Graph,
    rules: Rules,
    budget: &Budget,
) -> Result<(bool, Option<Vec<usize>>), SolveError> {
    let s = summarize(g, rules, budget)?;
    Ok((s.cops_win(), s.witness))
}

/// Cop turns needed under optimal play from the best start.
pub fn capture_time(g: &Graph, rules: Rules) -> Result<u32, SolveError> {
    summarize(g, rules, &Budget::from_env())?
        .capture_time
        .ok_or(SolveError::CopsCannotWin(rules))
}

pub fn cop_number(g: &Graph) -> Result<usize, SolveError> {
    cop_number_with(g, &Budget::from_env())
}

pub fn cop_number_with(g: &Graph, budget: &Budget) -> Result<usize, SolveError> {
    require_connected(g)?;
    let gamma = domination_number(g);
    let mut ascent = CopAscent::new(g, *budget);
    Ok(ascent.first_win(false, 1, gamma)?.unwrap_or(gamma))
}

pub fn lazy_cop_number(g: &Graph) -> Result<usize, SolveError> {
    lazy_cop_number_with(g, &Budget::from_env())
}

pub fn lazy_cop_number_with(g: &Graph, budget: &Budget) -> Result<usize, SolveError> {
    require_connected(g)?;
    let gamma = domination_number(g);
    let mut ascent = CopAscent::new(g, *budget);
    Ok(ascent.first_win(true, 1, gamma)?.unwrap_or(gamma))
}

/// Full classification of a connected graph without any shortcuts beyond
/// the domination bound. The winning games at both cop numbers are solved
/// as well when they fit the budget, to report witnesses and capture times.
pub fn solve_outcome(g: &Graph, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    require_connected(g)?;
    let gamma = domination_number(g);
    let mut ascent = CopAscent::new(g, *budget);
    let cl = ascent.first_win(true, 1, gamma)?.unwrap_or(gamma);
    let c = ascent.first_win(false, 1, cl)?.unwrap_or(cl);
    for rules in [Rules::lazy(cl), Rules::standard(c)] {
        match ascent.summary(rules) {
            Ok(_) | Err(SolveError::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(SolveOutcome {
        cop_number: c,
        lazy_cop_number: cl,
        domination_number: gamma,
        dismantlable: is_dismantlable(g),
        capture_times: ascent.capture_times(),
        witness_placements: ascent.witness_placements(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen, rooks, star};
    use crate::solver::is_dominating;

    #[test]
    fn petersen_values() {
        let g = petersen();
        assert!(cops_can_win(&g, Rules::standard(3)).unwrap().0);
        assert!(!cops_can_win(&g, Rules::standard(2)).unwrap().0);
        let out = solve_outcome(&g, &Budget::default()).unwrap();
        assert_eq!((out.cop_number, out.lazy_cop_number, out.domination_number), (3, 3, 3));
        assert!(!out.dismantlable);
    }

    #[test]
    fn r3_lazy_triple() {
        let g = rooks(3).unwrap();
        let (win, witness) = cops_can_win(&g, Rules::lazy(3)).unwrap();
        assert!(win);
        // stacking all three cops on one vertex already wins; they spread out
        // one at a time while the robber is kept at bay
        assert_eq!(witness, Some(vec![0, 0, 0]));
        assert_eq!(capture_time(&g, Rules::lazy(3)).unwrap(), 1);
        let wt = crate::solver::solve_attractor(&g, Rules::lazy(3)).unwrap();
        for p in 0..wt.placements() {
            if is_dominating(&g, wt.placement_set(p)) {
                assert_eq!(wt.placement_value(p), Some(1));
            }
        }
    }

    #[test]
    fn small_families() {
        assert_eq!(capture_time(&complete(5).unwrap(), Rules::lazy(1)).unwrap(), 1);
        assert!(capture_time(&star(4).unwrap(), Rules::lazy(1)).unwrap() <= 2);
        assert_eq!(capture_time(&path(5).unwrap(), Rules::lazy(1)).unwrap(), 2);
        let c9 = cycle(9).unwrap();
        assert_eq!(cop_number(&c9).unwrap(), 2);
        assert_eq!(lazy_cop_number(&c9).unwrap(), 2);
        let r4 = rooks(4).unwrap();
        assert_eq!(cop_number(&r4).unwrap(), 2);
        assert_eq!(lazy_cop_number(&r4).unwrap(), 4);
    }

    #[test]
    fn losing_rules_report_no_capture_time() {
        let g = cycle(5).unwrap();
        assert_eq!(
            capture_time(&g, Rules::lazy(1)),
            Err(SolveError::CopsCannotWin(Rules::lazy(1)))
        );
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(cop_number(&g), Err(SolveError::Disconnected { components: 3 }));
    }

    #[test]
    fn outcome_lists_every_solve() {
        let g = rooks(3).unwrap();
        let out = solve_outcome(&g, &Budget::default()).unwrap();
        assert_eq!((out.cop_number, out.lazy_cop_number, out.domination_number), (2, 3, 3));
        let tried: Vec<_> = out.capture_times.iter().map(|t| (t.k, t.m, t.rounds.is_some())).collect();
        assert_eq!(tried, vec![(1, 1, false), (2, 1, false), (2, 2, true), (3, 1, true)]);
        assert_eq!(out.witness_placements.len(), 2);
    }
}
