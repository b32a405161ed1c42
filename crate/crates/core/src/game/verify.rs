use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{
    breaker_strategy_moves, maker_strategy_move, new_game, Bias, BreakerMemory, GameConfig,
    GameState, MakerMemory, Move, Player, Status,
};
use crate::blocker::{build_edges, is_blocker, parse_structure};
use crate::polygon::PolygonSize;
use crate::triangulation::is_non_crossing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MakerVerification {
    pub n: usize,
    pub first_mover: Player,
    /// Finished games in the tree.
    pub leaves: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakerVerification {
    pub n: usize,
    pub leaves: u64,
    /// Most Breaker turns used in any line.
    pub max_breaker_turns: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason} after moves {}", format_history(.history))]
pub struct VerificationFailure {
    pub reason: String,
    pub history: Vec<Move>,
}

fn format_history(h: &[Move]) -> String {
    let parts: Vec<String> = h
        .iter()
        .map(|m| {
            let ds: Vec<String> = m.diagonals.iter().map(ToString::to_string).collect();
            format!("{}:{}", m.player, ds.join("+"))
        })
        .collect();
    format!("[{}]", parts.join(" "))
}

fn failure(state: &GameState, reason: impl Into<String>) -> VerificationFailure {
    VerificationFailure {
        reason: reason.into(),
        history: state.history().to_vec(),
    }
}

// Branch in parallel near the root only.
const PARALLEL_DEPTH: usize = 2;

/// Plays the ear-cut strategy against every possible sequence of Breaker
/// replies in the `(1:1)` game.
pub fn verify_maker_strategy(
    n: PolygonSize,
    first_mover: Player,
) -> Result<MakerVerification, VerificationFailure> {
    let state = new_game(GameConfig::with_bias(n, Bias::Unbiased, first_mover))
        .expect("built-in configuration");
    let leaves = maker_tree(state, MakerMemory::new(n))?;
    Ok(MakerVerification {
        n: n.get(),
        first_mover,
        leaves,
    })
}

fn maker_tree(state: GameState, memory: MakerMemory) -> Result<u64, VerificationFailure> {
    let n = state.n().get();
    match state.status() {
        Status::MakerWon => {
            let turns = state.turns_taken(Player::Maker);
            return if turns == n - 3 {
                Ok(1)
            } else {
                Err(failure(&state, format!("Maker won after {turns} moves")))
            };
        }
        Status::BreakerWon => return Err(failure(&state, "Breaker won")),
        Status::Ongoing => {}
    }
    match state.to_move() {
        Player::Maker => {
            let mv = maker_strategy_move(&state, &memory).map_err(|e| failure(&state, e.to_string()))?;
            let mut next = state.clone();
            next.play(Player::Maker, &[mv.diagonal])
                .map_err(|e| failure(&state, e.to_string()))?;
            if !is_non_crossing(next.maker()) {
                return Err(failure(&next, "Maker's diagonals cross"));
            }
            let mut memory = memory;
            memory.commit(mv);
            maker_tree(next, memory)
        }
        Player::Breaker => {
            let step = |d| {
                let mut next = state.clone();
                next.play(Player::Breaker, &[d]).expect("free diagonal");
                maker_tree(next, memory.clone())
            };
            let free: Vec<_> = state.unclaimed().iter().collect();
            if state.move_index() < PARALLEL_DEPTH {
                free.into_par_iter().map(step).try_reduce(|| 0, |a, b| Ok(a + b))
            } else {
                free.into_iter().map(step).sum()
            }
        }
    }
}

/// Plays the pairing strategy against every possible sequence of Maker
/// moves in the double-first `(1:2)` game with Maker opening.
pub fn verify_breaker_strategy(n: PolygonSize) -> Result<BreakerVerification, VerificationFailure> {
    let state = new_game(GameConfig::with_bias(n, Bias::OneTwoDoubleFirst, Player::Maker))
        .expect("built-in configuration");
    let (leaves, max_breaker_turns) = breaker_tree(state, BreakerMemory::new())?;
    Ok(BreakerVerification {
        n: n.get(),
        leaves,
        max_breaker_turns,
    })
}

fn breaker_tree(
    state: GameState,
    memory: BreakerMemory,
) -> Result<(u64, usize), VerificationFailure> {
    let n = state.n();
    match state.status() {
        Status::BreakerWon => {
            let turns = state.turns_taken(Player::Breaker);
            if turns > n.get() - 3 {
                return Err(failure(&state, format!("Breaker needed {turns} turns")));
            }
            parse_structure(n, state.breaker())
                .map_err(|v| failure(&state, format!("final set is not a blocker: {v}")))?;
            let pairing = memory
                .pairing_structure(&state)
                .ok_or_else(|| failure(&state, "a paired vertex has no beam"))?;
            let built = build_edges(n, &pairing).map_err(|e| failure(&state, e.to_string()))?;
            if &built != state.breaker() || !is_blocker(n, state.breaker()) {
                return Err(failure(&state, format!("final set differs from {pairing}")));
            }
            return Ok((1, turns));
        }
        Status::MakerWon => return Err(failure(&state, "Maker won")),
        Status::Ongoing => {}
    }
    match state.to_move() {
        Player::Breaker => {
            let mut memory = memory;
            let claim = breaker_strategy_moves(&state, &mut memory)
                .map_err(|e| failure(&state, e.to_string()))?;
            let mut next = state.clone();
            next.play(Player::Breaker, &claim)
                .map_err(|e| failure(&state, e.to_string()))?;
            match memory.disjoint_blocker(&next) {
                Some(b) if b.is_disjoint(next.maker()) && is_blocker(n, &b) => {}
                _ => return Err(failure(&next, "no blocker disjoint from Maker's diagonals")),
            }
            breaker_tree(next, memory)
        }
        Player::Maker => {
            let step = |d| {
                let mut next = state.clone();
                next.play(Player::Maker, &[d]).expect("free diagonal");
                breaker_tree(next, memory.clone())
            };
            let combine = |a: (u64, usize), b: (u64, usize)| (a.0 + b.0, a.1.max(b.1));
            let free: Vec<_> = state.unclaimed().iter().collect();
            if state.move_index() < PARALLEL_DEPTH {
                free.into_par_iter()
                    .map(step)
                    .try_reduce(|| (0, 0), |a, b| Ok(combine(a, b)))
            } else {
                free.into_iter().map(step).try_fold((0, 0), |acc, r| r.map(|x| combine(acc, x)))
            }
        }
    }
}
