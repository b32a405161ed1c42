use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{new_game, Bias, GameConfig, GameError, GameState, Player, Status};
use crate::polygon::{Diagonal, PolygonSize};
use crate::triangulation::mask_contains_triangulation;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Raise the size guard by one vertex.
    pub allow_large: bool,
    /// Share memo entries between rotations of a position.
    pub canonicalize_rotations: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub winner: Player,
    /// Maker turns still needed under optimal play, when Maker wins.
    pub maker_moves: Option<usize>,
    pub states_visited: usize,
    /// An optimal claim for the side to move.
    pub best_move: Option<Vec<Diagonal>>,
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.maker_moves {
            Some(k) => write!(f, "maker in {k}"),
            None => f.write_str("breaker"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("exact solving of a {n}-gon with this bias is limited to n <= {limit}")]
    Infeasible { n: usize, limit: usize },
    #[error("the game is already over")]
    Finished,
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Largest polygon the solver accepts for a configuration.
pub fn solver_limit(config: &GameConfig, allow_large: bool) -> usize {
    let base = if config.bias() == Some(Bias::Unbiased) { 7 } else { 6 };
    base + usize::from(allow_large)
}

pub fn solve(config: GameConfig, options: SolverOptions) -> Result<Solution, SolveError> {
    let state = new_game(config)?;
    solve_state(&state, options)
}

/// Solves the game from an arbitrary ongoing position.
pub fn solve_state(state: &GameState, options: SolverOptions) -> Result<Solution, SolveError> {
    let config = *state.config();
    let n = config.n.get();
    let limit = solver_limit(&config, options.allow_large);
    if n > limit {
        return Err(SolveError::Infeasible { n, limit });
    }
    if state.status() != Status::Ongoing {
        return Err(SolveError::Finished);
    }
    let mut search = Search::new(config.n, config, options.canonicalize_rotations);
    let maker = state.maker().low_word();
    let breaker = state.breaker().low_word();
    let maker_turn = state.to_move() == Player::Maker;
    let free = (search.full & !(maker | breaker)).count_ones();
    let horizon = free.div_ceil(config.maker_per_turn as u32) + 1;
    let value = (search.need(maker)..=horizon)
        .find(|&d| search.win(maker, breaker, maker_turn, d));
    let best = search.best_move(maker, breaker, maker_turn, value, horizon);
    Ok(Solution {
        winner: if value.is_some() {
            Player::Maker
        } else {
            Player::Breaker
        },
        maker_moves: value.map(|d| d as usize),
        states_visited: search.visited,
        best_move: best.map(|mask| search.decode(mask)),
    })
}

#[derive(Clone, Copy)]
struct Bounds {
    /// Largest depth known to lose for Maker.
    lose_upto: u32,
    /// Smallest depth known to win for Maker.
    win_from: u32,
}

struct Search {
    n: usize,
    config: GameConfig,
    table: Vec<usize>,
    diagonals: Vec<Diagonal>,
    full: u64,
    rotations: Option<Vec<Vec<u8>>>,
    memo: HashMap<(u64, u64, bool), Bounds>,
    visited: usize,
}

impl Search {
    fn new(n: PolygonSize, config: GameConfig, canonicalize: bool) -> Self {
        let diagonals: Vec<Diagonal> = n.diagonals().collect();
        let table = n.index_table();
        let count = diagonals.len();
        let full = if count == 64 { u64::MAX } else { (1u64 << count) - 1 };
        let rotations = canonicalize.then(|| {
            let nn = n.get();
            (1..nn)
                .map(|k| {
                    diagonals
                        .iter()
                        .map(|d| table[(d.i() + k) % nn * nn + (d.j() + k) % nn] as u8)
                        .collect()
                })
                .collect()
        });
        Self {
            n: n.get(),
            config,
            table,
            diagonals,
            full,
            rotations,
            memo: HashMap::new(),
            visited: 0,
        }
    }

    fn has_triangulation(&self, mask: u64) -> bool {
        mask_contains_triangulation(self.n, &self.table, mask)
    }

    /// Lower bound on Maker turns: a triangulation has n - 3 diagonals.
    fn need(&self, maker: u64) -> u32 {
        let missing = (self.n as u32 - 3).saturating_sub(maker.count_ones());
        missing.div_ceil(self.config.maker_per_turn as u32).max(1)
    }

    fn quota(&self, maker_turn: bool, breaker: u64, free: u64) -> usize {
        let player = if maker_turn { Player::Maker } else { Player::Breaker };
        self.config
            .quota(player, breaker != 0)
            .min(free.count_ones() as usize)
    }

    fn key(&self, maker: u64, breaker: u64, maker_turn: bool) -> (u64, u64, bool) {
        let Some(rots) = &self.rotations else {
            return (maker, breaker, maker_turn);
        };
        let rotate = |mask: u64, perm: &[u8]| {
            let mut out = 0u64;
            let mut m = mask;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                out |= 1 << perm[b];
                m &= m - 1;
            }
            out
        };
        let mut best = (maker, breaker);
        for perm in rots {
            best = best.min((rotate(maker, perm), rotate(breaker, perm)));
        }
        (best.0, best.1, maker_turn)
    }

    /// Can Maker win from this ongoing position within `d` more Maker turns?
    fn win(&mut self, maker: u64, breaker: u64, maker_turn: bool, d: u32) -> bool {
        if d < self.need(maker) {
            return false;
        }
        let key = self.key(maker, breaker, maker_turn);
        if let Some(b) = self.memo.get(&key) {
            if d <= b.lose_upto {
                return false;
            }
            if d >= b.win_from {
                return true;
            }
        }
        self.visited += 1;
        let free = self.full & !(maker | breaker);
        let q = self.quota(maker_turn, breaker, free);
        let result = if maker_turn {
            any_combination(free, q, &mut |c| {
                let m2 = maker | c;
                self.has_triangulation(m2) || (d > 1 && self.win(m2, breaker, false, d - 1))
            })
        } else {
            !any_combination(free, q, &mut |c| {
                let b2 = breaker | c;
                !self.has_triangulation(self.full & !b2) || !self.win(maker, b2, true, d)
            })
        };
        let entry = self.memo.entry(key).or_insert(Bounds {
            lose_upto: 0,
            win_from: u32::MAX,
        });
        if result {
            entry.win_from = entry.win_from.min(d);
        } else {
            entry.lose_upto = entry.lose_upto.max(d);
        }
        result
    }

    fn best_move(
        &mut self,
        maker: u64,
        breaker: u64,
        maker_turn: bool,
        value: Option<u32>,
        horizon: u32,
    ) -> Option<u64> {
        let free = self.full & !(maker | breaker);
        let q = self.quota(maker_turn, breaker, free);
        let mut found = None;
        any_combination(free, q, &mut |c| {
            let good = match (maker_turn, value) {
                (true, Some(d)) => {
                    self.has_triangulation(maker | c)
                        || (d > 1 && self.win(maker | c, breaker, false, d - 1))
                }
                (true, None) => true,
                (false, Some(d)) => {
                    d == 1 || !self.win(maker, breaker | c, true, d - 1)
                }
                (false, None) => {
                    !self.has_triangulation(self.full & !(breaker | c))
                        || !self.win(maker, breaker | c, true, horizon)
                }
            };
            if good {
                found = Some(c);
            }
            good
        });
        found
    }

    fn decode(&self, mask: u64) -> Vec<Diagonal> {
        (0..self.diagonals.len())
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| self.diagonals[b])
            .collect()
    }
}

/// Calls `f` on `k`-subsets of `free` in increasing bit order until it
/// returns true; reports whether it did.
fn any_combination(free: u64, k: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn go(rest: u64, k: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        let mut r = rest;
        while r.count_ones() as usize >= k {
            let bit = r & r.wrapping_neg();
            r &= r - 1;
            if go(r, k - 1, acc | bit, f) {
                return true;
            }
        }
        false
    }
    go(free, k, 0, f)
}
