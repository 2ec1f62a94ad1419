//! Exact solving of the pursuit game under an "at most `m` of `k` cops move"
//! rule. `m = 1` is the lazy game, `m = k` the standard one.

mod attractor;
mod dismantle;
mod domination;
mod multiset;
mod outcome;
mod strategy;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use attractor::{solve_attractor, solve_attractor_with, GameState, Turn, WinTable, UNRESOLVED};
pub use dismantle::{dismantling_order, is_dismantlable};
pub use domination::{domination_number, is_dominating, min_dominating_set};
pub use multiset::{binomial, multiset_count, multiset_rank, multiset_unrank, MultisetError};
pub use outcome::{
    capture_time, cop_number, cop_number_with, cops_can_win, cops_can_win_with, lazy_cop_number,
    lazy_cop_number_with, solve_outcome, CaptureTime, CopAscent, Placement, SolveOutcome, WinSummary,
};
pub use strategy::{extract_strategies, CopMoveEntry, RobberMoveEntry, StrategyEntries, StrategyTable};

/// Environment variable overriding the default state budget.
pub const BUDGET_ENV: &str = "LAZYCOP_BUDGET";

/// Movement rule: `cops` cops, at most `movers` of which move per cop turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rules {
    cops: usize,
    movers: usize,
}

impl Rules {
    pub fn new(cops: usize, movers: usize) -> Result<Self, SolveError> {
        if cops == 0 || movers == 0 || movers > cops {
            return Err(SolveError::InvalidRules { cops, movers });
        }
        Ok(Rules { cops, movers })
    }

    /// Only one cop may move per turn.
    pub fn lazy(cops: usize) -> Self {
        Rules::new(cops, 1).expect("lazy rules need at least one cop")
    }

    /// Every cop may move each turn.
    pub fn standard(cops: usize) -> Self {
        Rules::new(cops, cops).expect("standard rules need at least one cop")
    }

    pub fn cops(&self) -> usize {
        self.cops
    }

    pub fn movers(&self) -> usize {
        self.movers
    }

    pub fn is_lazy(&self) -> bool {
        self.movers == 1
    }
}

impl fmt::Display for Rules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} m={}", self.cops, self.movers)
    }
}

/// Memory limits for a single solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_states: u64,
    pub max_transitions: u64,
}

impl Budget {
    pub const DEFAULT_STATES: u64 = 40_000_000;

    pub fn with_states(max_states: u64) -> Self {
        Budget {
            max_states,
            max_transitions: max_states.saturating_mul(4),
        }
    }

    /// Default budget, overridden by `LAZYCOP_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse::<u64>().ok())
            .map(Budget::with_states)
            .unwrap_or_default()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::with_states(Self::DEFAULT_STATES)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid rules: {cops} cops with {movers} movers")]
    InvalidRules { cops: usize, movers: usize },
    #[error("{what} budget exceeded: need {required}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u64,
        budget: u64,
    },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("cops cannot win with {0}")]
    CopsCannotWin(Rules),
    #[error("win table was computed for {table}, not {requested}")]
    RulesMismatch { table: Rules, requested: Rules },
}
