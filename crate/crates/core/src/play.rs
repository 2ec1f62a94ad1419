//! Turn-based session between a human and the solved strategies.
//!
//! Turn order: the cops place, the robber places, then cop moves and robber
//! moves alternate. All output goes to the supplied writer and contains no
//! timing or randomness, so replaying the same input reproduces the same
//! transcript byte for byte.

use std::io::{self, BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::solver::{
    extract_strategies, solve_attractor_with, Budget, Rules, SolveError, StrategyTable, WinTable, UNRESOLVED,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Cops,
    Robber,
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cop" | "cops" => Ok(Side::Cops),
            "robber" => Ok(Side::Robber),
            other => Err(format!("unknown side {other:?}; expected cops or robber")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PlayConfig {
    pub rules: Rules,
    pub human: Side,
    /// Cop turns after which the robber is declared to have escaped.
    pub max_rounds: usize,
    pub hints: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlayResult {
    /// Robber caught after this many cop turns.
    Captured { rounds: usize },
    RoundCap { rounds: usize },
    /// Input ended or the human quit.
    Abandoned { rounds: usize },
}

#[derive(Debug, Error)]
pub enum PlayError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

pub struct PlaySession {
    graph: Graph,
    config: PlayConfig,
    table: WinTable,
    strategy: StrategyTable,
}

enum Read<T> {
    Value(T),
    Quit,
}

impl PlaySession {
    pub fn new(graph: &Graph, config: PlayConfig, budget: &Budget) -> Result<Self, PlayError> {
        let table = solve_attractor_with(graph, config.rules, budget)?;
        let strategy = extract_strategies(graph, config.rules, &table)?;
        Ok(PlaySession {
            graph: graph.clone(),
            config,
            table,
            strategy,
        })
    }

    pub fn table(&self) -> &WinTable {
        &self.table
    }

    /// Engine cop start: the fastest winning placement, else the one leaving
    /// the robber fewest safe starts. Ties go to the least placement.
    pub fn engine_cop_start(&self) -> usize {
        let wt = &self.table;
        let n = self.graph.n();
        (0..wt.placements())
            .min_by_key(|&p| {
                let safe = (0..n).filter(|&r| wt.cop_turn_rank(p, r) == UNRESOLVED).count();
                (safe, wt.placement_value(p).unwrap_or(UNRESOLVED), wt.placement_cops(p))
            })
            .expect("at least one placement")
    }

    fn engine_robber_start(&self, p: usize) -> usize {
        self.strategy.robber_start(p).unwrap_or_else(|| {
            // cops win anyway: delay as long as possible
            (0..self.graph.n())
                .max_by_key(|&r| (self.table.cop_turn_rank(p, r), std::cmp::Reverse(r)))
                .expect("graph has vertices")
        })
    }

    fn engine_cop_move(&self, p: usize, r: usize) -> usize {
        self.strategy.cop_move(p, r).unwrap_or_else(|| {
            let wt = &self.table;
            wt.successors(p)
                .iter()
                .map(|&q| q as usize)
                .min_by_key(|&q| (wt.robber_turn_rank(q, r), wt.placement_cops(q)))
                .expect("passing is always legal")
        })
    }

    fn engine_robber_move(&self, p: usize, r: usize) -> usize {
        self.strategy.robber_move(p, r).unwrap_or_else(|| {
            self.graph
                .closed_neighbors(r)
                .iter()
                .max_by_key(|&d| (self.table.cop_turn_rank(p, d), std::cmp::Reverse(d)))
                .expect("staying is always legal")
        })
    }

    fn fmt_cops(&self, p: usize) -> String {
        let cops: Vec<String> = self.table.placement_cops(p).iter().map(|c| c.to_string()).collect();
        format!("[{}]", cops.join(" "))
    }

    /// Play one game reading human moves from `input`.
    pub fn run<R: BufRead, W: Write>(&self, mut input: R, out: &mut W) -> Result<PlayResult, PlayError> {
        let rules = self.config.rules;
        writeln!(
            out,
            "{} vertices, {} cops, at most {} moving per turn; you play the {}",
            self.graph.n(),
            rules.cops(),
            rules.movers(),
            if self.config.human == Side::Cops { "cops" } else { "robber" }
        )?;
        let human_cops = self.config.human == Side::Cops;

        let mut p = if human_cops {
            let hint = self.engine_cop_start();
            match self.read_placement(&mut input, out, hint)? {
                Read::Value(p) => p,
                Read::Quit => return Ok(PlayResult::Abandoned { rounds: 0 }),
            }
        } else {
            self.engine_cop_start()
        };
        writeln!(out, "cops start at {}", self.fmt_cops(p))?;

        let mut r = if human_cops {
            self.engine_robber_start(p)
        } else {
            let hint = self.engine_robber_start(p);
            let all: Vec<usize> = (0..self.graph.n()).collect();
            match self.read_vertex(&mut input, out, "robber start", &all, hint)? {
                Read::Value(v) => v,
                Read::Quit => return Ok(PlayResult::Abandoned { rounds: 0 }),
            }
        };
        writeln!(out, "robber starts at {r}")?;
        if self.table.placement_set(p).contains(r) {
            writeln!(out, "captured after 0 rounds")?;
            return Ok(PlayResult::Captured { rounds: 0 });
        }

        let mut rounds = 0;
        while rounds < self.config.max_rounds {
            rounds += 1;
            p = if human_cops {
                let hint = self.engine_cop_move(p, r);
                match self.read_cop_move(&mut input, out, p, hint)? {
                    Read::Value(q) => q,
                    Read::Quit => return Ok(PlayResult::Abandoned { rounds }),
                }
            } else {
                self.engine_cop_move(p, r)
            };
            writeln!(out, "round {rounds}: cops move to {}", self.fmt_cops(p))?;
            if self.table.placement_set(p).contains(r) {
                writeln!(out, "captured after {rounds} rounds")?;
                return Ok(PlayResult::Captured { rounds });
            }
            r = if human_cops {
                self.engine_robber_move(p, r)
            } else {
                let hint = self.engine_robber_move(p, r);
                let legal: Vec<usize> = self.graph.closed_neighbors(r).iter().collect();
                match self.read_vertex(&mut input, out, "robber move", &legal, hint)? {
                    Read::Value(v) => v,
                    Read::Quit => return Ok(PlayResult::Abandoned { rounds }),
                }
            };
            writeln!(out, "round {rounds}: robber moves to {r}")?;
            if self.table.placement_set(p).contains(r) {
                writeln!(out, "captured after {rounds} rounds")?;
                return Ok(PlayResult::Captured { rounds });
            }
        }
        writeln!(out, "robber survives {rounds} rounds")?;
        Ok(PlayResult::RoundCap { rounds })
    }

    /// Next non-empty input line, `None` at end of input or on `quit`.
    fn next_line<R: BufRead>(&self, input: &mut R) -> io::Result<Option<String>> {
        let mut line = String::new();
        loop {
            line.clear();
            if input.read_line(&mut line)? == 0 {
                return Ok(None);
            }
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if t == "quit" || t == "q" {
                return Ok(None);
            }
            return Ok(Some(t.to_string()));
        }
    }

    fn read_vertex<R: BufRead, W: Write>(
        &self,
        input: &mut R,
        out: &mut W,
        what: &str,
        legal: &[usize],
        hint: usize,
    ) -> Result<Read<usize>, PlayError> {
        loop {
            if self.config.hints {
                writeln!(out, "hint: {hint}")?;
            }
            write!(out, "{what}? ")?;
            out.flush()?;
            let Some(line) = self.next_line(input)? else {
                writeln!(out)?;
                return Ok(Read::Quit);
            };
            writeln!(out, "{line}")?;
            match line.parse::<usize>() {
                Ok(v) if legal.contains(&v) => return Ok(Read::Value(v)),
                _ => {
                    let list: Vec<String> = legal.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "illegal; choose one of: {}", list.join(" "))?;
                }
            }
        }
    }

    fn parse_cops(&self, line: &str) -> Option<usize> {
        let cops: Option<Vec<usize>> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().ok())
            .collect();
        self.table.placement_index(&cops?)
    }

    fn read_placement<R: BufRead, W: Write>(
        &self,
        input: &mut R,
        out: &mut W,
        hint: usize,
    ) -> Result<Read<usize>, PlayError> {
        loop {
            if self.config.hints {
                writeln!(out, "hint: {}", self.fmt_cops(hint))?;
            }
            write!(out, "cop start ({} vertices)? ", self.config.rules.cops())?;
            out.flush()?;
            let Some(line) = self.next_line(input)? else {
                writeln!(out)?;
                return Ok(Read::Quit);
            };
            writeln!(out, "{line}")?;
            match self.parse_cops(&line) {
                Some(p) => return Ok(Read::Value(p)),
                None => writeln!(
                    out,
                    "illegal; give {} vertex ids below {}",
                    self.config.rules.cops(),
                    self.graph.n()
                )?,
            }
        }
    }

    fn read_cop_move<R: BufRead, W: Write>(
        &self,
        input: &mut R,
        out: &mut W,
        p: usize,
        hint: usize,
    ) -> Result<Read<usize>, PlayError> {
        loop {
            if self.config.hints {
                writeln!(out, "hint: {}", self.fmt_cops(hint))?;
            }
            write!(out, "cops move to? ")?;
            out.flush()?;
            let Some(line) = self.next_line(input)? else {
                writeln!(out)?;
                return Ok(Read::Quit);
            };
            writeln!(out, "{line}")?;
            match self.parse_cops(&line) {
                Some(q) if self.table.successors(p).contains(&(q as u32)) => return Ok(Read::Value(q)),
                _ => {
                    let mut legal: Vec<Vec<usize>> = self
                        .table
                        .successors(p)
                        .iter()
                        .map(|&q| self.table.placement_cops(q as usize))
                        .collect();
                    legal.sort();
                    let list: Vec<String> = legal
                        .iter()
                        .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                        .collect();
                    writeln!(out, "illegal; choose one of: [{}]", list.join("] ["))?;
                }
            }
        }
    }
}
