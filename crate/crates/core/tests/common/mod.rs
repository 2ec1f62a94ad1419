//! Test-side oracles, written against the graph API only so that they do not
//! share code with the solver they check.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use lazycop_core::enumerate::{enumerate_connected, Constraints};
use lazycop_core::solver::{StrategyTable, WinTable};
use lazycop_core::{Graph, Rules};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    enumerate_connected(&Constraints::connected(n)).expect("valid constraints")
}

pub fn connected_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Connected G(n, p) sample with `p` itself drawn at random.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p: f64 = rng.gen_range(0.1..0.7);
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

pub fn closed_nbhd(g: &Graph, v: usize) -> Vec<usize> {
    (0..g.n()).filter(|&u| u == v || g.has_edge(u, v)).collect()
}

/// All sorted cop tuples reachable from `from` when at most `m` cops each
/// take one edge, passing included.
pub fn cop_successors(g: &Graph, from: &[usize], m: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, from: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut HashSet<Vec<usize>>) {
        if i == from.len() {
            let mut s = cur.clone();
            s.sort_unstable();
            out.insert(s);
            return;
        }
        cur.push(from[i]);
        go(g, from, i + 1, left, cur, out);
        cur.pop();
        if left > 0 {
            for w in (0..g.n()).filter(|&w| g.has_edge(from[i], w)) {
                cur.push(w);
                go(g, from, i + 1, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = HashSet::new();
    go(g, from, 0, m, &mut Vec::new(), &mut out);
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    v
}

/// Whether `to` is reachable from `from` in one cop turn, checked by trying
/// every matching of old to new positions.
pub fn is_legal_cop_move(g: &Graph, from: &[usize], to: &[usize], m: usize) -> bool {
    fn go(g: &Graph, from: &[usize], to: &[usize], used: &mut Vec<bool>, i: usize, moved: usize, m: usize) -> bool {
        if i == from.len() {
            return true;
        }
        for j in 0..to.len() {
            if used[j] {
                continue;
            }
            let step = if from[i] == to[j] {
                0
            } else if g.has_edge(from[i], to[j]) {
                1
            } else {
                continue;
            };
            if moved + step > m {
                continue;
            }
            used[j] = true;
            if go(g, from, to, used, i + 1, moved + step, m) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    from.len() == to.len() && go(g, from, to, &mut vec![false; to.len()], 0, 0, m)
}

/// Replays the cop strategy from cop-turn position `(p, r)` against every
/// robber reply; true when capture always happens within `turns` cop turns.
#[allow(clippy::too_many_arguments)]
pub fn cop_strategy_captures(
    g: &Graph,
    rules: Rules,
    wt: &WinTable,
    st: &StrategyTable,
    p: usize,
    r: usize,
    turns: u32,
    proven: &mut HashSet<(usize, usize, u32)>,
) -> bool {
    let cops = wt.placement_cops(p);
    if cops.contains(&r) {
        return true;
    }
    if turns == 0 {
        return false;
    }
    if proven.contains(&(p, r, turns)) {
        return true;
    }
    let Some(q) = st.cop_move(p, r) else {
        return false;
    };
    let next = wt.placement_cops(q);
    if !is_legal_cop_move(g, &cops, &next, rules.movers()) {
        return false;
    }
    if next.contains(&r) {
        proven.insert((p, r, turns));
        return true;
    }
    for d in closed_nbhd(g, r) {
        if next.contains(&d) {
            continue;
        }
        if !cop_strategy_captures(g, rules, wt, st, q, d, turns - 1, proven) {
            return false;
        }
    }
    proven.insert((p, r, turns));
    true
}

/// Explores every cop play against the robber policy from every cop start;
/// true when no reachable position is a capture.
pub fn robber_strategy_evades(g: &Graph, rules: Rules, wt: &WinTable, st: &StrategyTable) -> bool {
    let mut seen: HashSet<(Vec<usize>, usize)> = HashSet::new();
    let mut queue: VecDeque<(Vec<usize>, usize)> = VecDeque::new();
    for p in 0..wt.placements() {
        let Some(r) = st.robber_start(p) else {
            return false;
        };
        let cops = wt.placement_cops(p);
        if cops.contains(&r) {
            return false;
        }
        if seen.insert((cops.clone(), r)) {
            queue.push_back((cops, r));
        }
    }
    while let Some((cops, r)) = queue.pop_front() {
        for next in cop_successors(g, &cops, rules.movers()) {
            if next.contains(&r) {
                return false;
            }
            let q = wt.placement_index(&next).expect("valid placement");
            let Some(d) = st.robber_move(q, r) else {
                return false;
            };
            if !closed_nbhd(g, r).contains(&d) || next.contains(&d) {
                return false;
            }
            if seen.insert((next.clone(), d)) {
                queue.push_back((next, d));
            }
        }
    }
    true
}

/// Plays the robber policy for `rounds` rounds against cops making random
/// legal moves; returns the round of capture, if any.
pub fn random_cops_vs_robber(
    g: &Graph,
    rules: Rules,
    wt: &WinTable,
    st: &StrategyTable,
    start: usize,
    rounds: usize,
    rng: &mut ChaCha8Rng,
) -> Option<usize> {
    let mut cops = wt.placement_cops(start);
    let mut r = st.robber_start(start)?;
    if cops.contains(&r) {
        return Some(0);
    }
    for round in 1..=rounds {
        let options = cop_successors(g, &cops, rules.movers());
        // chase when possible, otherwise wander
        cops = match options.iter().find(|c| c.contains(&r)) {
            Some(c) if rng.gen_bool(0.5) => c.clone(),
            _ => options[rng.gen_range(0..options.len())].clone(),
        };
        if cops.contains(&r) {
            return Some(round);
        }
        let q = wt.placement_index(&cops).unwrap();
        r = st.robber_move(q, r)?;
        if cops.contains(&r) {
            return Some(round);
        }
    }
    None
}

/// Smallest dominating set size by trying subsets in order of size.
pub fn brute_force_domination(g: &Graph) -> usize {
    let n = g.n();
    let closed: Vec<u64> = (0..n).map(|v| g.closed_neighbors(v).0).collect();
    let full = (1u64 << n) - 1;
    (1..=n)
        .find(|&s| {
            (0u64..1 << n)
                .filter(|m| m.count_ones() as usize == s)
                .any(|m| (0..n).filter(|&v| m >> v & 1 == 1).fold(0, |acc, v| acc | closed[v]) == full)
        })
        .unwrap()
}
