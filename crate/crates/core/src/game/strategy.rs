use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    breaker_strategy_moves, maker_strategy_move, new_game, BreakerMemory, GameConfig, GameError,
    GameState, MakerMemory, Player, Status, StrategyError,
};
use crate::polygon::{Diagonal, DiagonalSet};

pub trait Strategy {
    fn name(&self) -> &'static str;

    /// Diagonals to claim on the current turn; `state.to_move()` is the
    /// strategy's own side.
    fn choose(
        &mut self,
        state: &GameState,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Diagonal>, StrategyError>;
}

#[derive(Debug, Clone, Default)]
pub struct PaperMaker {
    memory: Option<MakerMemory>,
}

impl PaperMaker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memory(&self) -> Option<&MakerMemory> {
        self.memory.as_ref()
    }
}

impl Strategy for PaperMaker {
    fn name(&self) -> &'static str {
        "paper_maker"
    }

    fn choose(&mut self, state: &GameState, _: &mut ChaCha8Rng) -> Result<Vec<Diagonal>, StrategyError> {
        let memory = self
            .memory
            .get_or_insert_with(|| MakerMemory::new(state.n()));
        let mv = maker_strategy_move(state, memory)?;
        memory.commit(mv);
        Ok(vec![mv.diagonal])
    }
}

#[derive(Debug, Clone, Default)]
pub struct PaperBreaker {
    memory: BreakerMemory,
}

impl PaperBreaker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memory(&self) -> &BreakerMemory {
        &self.memory
    }
}

impl Strategy for PaperBreaker {
    fn name(&self) -> &'static str {
        "paper_breaker"
    }

    fn choose(&mut self, state: &GameState, _: &mut ChaCha8Rng) -> Result<Vec<Diagonal>, StrategyError> {
        breaker_strategy_moves(state, &mut self.memory)
    }
}

/// Uniformly random unclaimed diagonals.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomStrategy;

impl Strategy for RandomStrategy {
    fn name(&self) -> &'static str {
        "random"
    }

    fn choose(&mut self, state: &GameState, rng: &mut ChaCha8Rng) -> Result<Vec<Diagonal>, StrategyError> {
        let free: Vec<Diagonal> = state.unclaimed().iter().collect();
        Ok(free
            .choose_multiple(rng, state.required_arity())
            .copied()
            .collect())
    }
}

/// The lexicographically first unclaimed diagonals.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstAvailable;

impl Strategy for FirstAvailable {
    fn name(&self) -> &'static str {
        "first_available"
    }

    fn choose(&mut self, state: &GameState, _: &mut ChaCha8Rng) -> Result<Vec<Diagonal>, StrategyError> {
        Ok(state
            .unclaimed()
            .iter()
            .take(state.required_arity())
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    PaperMaker,
    PaperBreaker,
    Random,
    FirstAvailable,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 4] = [
        StrategyKind::PaperMaker,
        StrategyKind::PaperBreaker,
        StrategyKind::Random,
        StrategyKind::FirstAvailable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyKind::PaperMaker => "paper_maker",
            StrategyKind::PaperBreaker => "paper_breaker",
            StrategyKind::Random => "random",
            StrategyKind::FirstAvailable => "first_available",
        }
    }

    pub fn build(self) -> Box<dyn Strategy + Send> {
        match self {
            StrategyKind::PaperMaker => Box::new(PaperMaker::new()),
            StrategyKind::PaperBreaker => Box::new(PaperBreaker::new()),
            StrategyKind::Random => Box::new(RandomStrategy),
            StrategyKind::FirstAvailable => Box::new(FirstAvailable),
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub index: usize,
    pub player: Player,
    pub diagonals: Vec<Diagonal>,
    pub status_after: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub config: GameConfig,
    pub seed: u64,
    pub maker_strategy: String,
    pub breaker_strategy: String,
    pub entries: Vec<TranscriptEntry>,
    pub status: Status,
    pub maker_turns: usize,
    pub breaker_turns: usize,
    pub maker: DiagonalSet,
    pub breaker: DiagonalSet,
}

#[derive(Debug, Clone, Error)]
#[error("{strategy} ({player}) failed at move {index}: {reason}\n{dump}")]
pub struct PlayError {
    pub strategy: String,
    pub player: Player,
    pub index: usize,
    pub reason: String,
    pub dump: String,
}

fn dump(state: &GameState) -> String {
    format!(
        "n={} to_move={} maker=[{}] breaker=[{}]",
        state.n().get(),
        state.to_move(),
        state.maker(),
        state.breaker()
    )
}

/// Plays a full game between two strategies; deterministic for a given seed.
pub fn play_out(
    config: GameConfig,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    seed: u64,
) -> Result<Transcript, PlayError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = new_game(config).map_err(|e: GameError| PlayError {
        strategy: String::new(),
        player: config.first_mover,
        index: 0,
        reason: e.to_string(),
        dump: String::new(),
    })?;
    let mut entries = Vec::new();
    while state.status() == Status::Ongoing {
        let player = state.to_move();
        let strategy: &mut dyn Strategy = match player {
            Player::Maker => &mut *maker,
            Player::Breaker => &mut *breaker,
        };
        let name = strategy.name().to_string();
        let fail = |reason: String, state: &GameState| PlayError {
            strategy: name.clone(),
            player,
            index: state.move_index(),
            reason,
            dump: dump(state),
        };
        let claim = match strategy.choose(&state, &mut rng) {
            Ok(c) => c,
            Err(e) => return Err(fail(e.to_string(), &state)),
        };
        if let Err(e) = state.play(player, &claim) {
            return Err(fail(format!("illegal move: {e}"), &state));
        }
        entries.push(TranscriptEntry {
            index: entries.len(),
            player,
            diagonals: claim,
            status_after: state.status(),
        });
    }
    Ok(Transcript {
        config,
        seed,
        maker_strategy: maker.name().to_string(),
        breaker_strategy: breaker.name().to_string(),
        entries,
        status: state.status(),
        maker_turns: state.turns_taken(Player::Maker),
        breaker_turns: state.turns_taken(Player::Breaker),
        maker: state.maker().clone(),
        breaker: state.breaker().clone(),
    })
}
