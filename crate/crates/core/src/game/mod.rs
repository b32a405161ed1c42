//! The triangulation Maker-Breaker game.
//!
//! The board is the set of diagonals; Maker wins by owning a triangulation,
//! Breaker by owning a blocking set. Both conditions are evaluated after every
//! turn, so a game can end before the board fills.

mod breaker;
mod maker;
mod selfridge;
mod solver;
mod strategy;
mod verify;

pub use breaker::{breaker_strategy_moves, BreakerMemory};
pub use maker::{live_chords, maker_strategy_move, MakerMemory, MakerMove};
pub use selfridge::{erdos_selfridge_potential, selfridge_sum, Potential, SelfridgeVerdict};
pub use solver::{solve, solve_state, solver_limit, SolveError, Solution, SolverOptions};
pub use strategy::{
    play_out, FirstAvailable, PaperBreaker, PaperMaker, PlayError, RandomStrategy, Strategy,
    StrategyKind, Transcript, TranscriptEntry,
};
pub use verify::{
    verify_breaker_strategy, verify_maker_strategy, BreakerVerification, MakerVerification,
    VerificationFailure,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{Diagonal, DiagonalSet, PolygonError, PolygonSize};
use crate::triangulation::{contains_triangulation, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Player::Maker => "maker",
            Player::Breaker => "breaker",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Player {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maker" => Ok(Player::Maker),
            "breaker" => Ok(Player::Breaker),
            other => Err(GameError::InvalidConfig(format!("unknown player `{other}`"))),
        }
    }
}

/// The two biases the built-in strategies serve, plus the plain `(1:2)` game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bias {
    /// `(1:1)`.
    Unbiased,
    /// `(1:2)` where Breaker claims two diagonals only on its first turn.
    OneTwoDoubleFirst,
    /// `(1:2)` with two diagonals on every Breaker turn.
    OneTwo,
}

impl Bias {
    pub fn as_str(self) -> &'static str {
        match self {
            Bias::Unbiased => "1:1",
            Bias::OneTwoDoubleFirst => "1:2",
            Bias::OneTwo => "1:2-standard",
        }
    }
}

impl FromStr for Bias {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1:1" => Ok(Bias::Unbiased),
            "1:2" => Ok(Bias::OneTwoDoubleFirst),
            "1:2-standard" => Ok(Bias::OneTwo),
            other => Err(GameError::InvalidConfig(format!("unknown bias `{other}`"))),
        }
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    pub n: PolygonSize,
    pub maker_per_turn: usize,
    pub breaker_per_turn: usize,
    pub first_mover: Player,
    /// Breaker claims two diagonals on its first turn and
    /// `breaker_per_turn` (which must be 1) afterwards.
    pub breaker_double_first_only: bool,
}

impl GameConfig {
    pub fn new(
        n: PolygonSize,
        maker_per_turn: usize,
        breaker_per_turn: usize,
        first_mover: Player,
        breaker_double_first_only: bool,
    ) -> Result<Self, GameError> {
        let cfg = Self {
            n,
            maker_per_turn,
            breaker_per_turn,
            first_mover,
            breaker_double_first_only,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_bias(n: PolygonSize, bias: Bias, first_mover: Player) -> Self {
        match bias {
            Bias::Unbiased => Self::new(n, 1, 1, first_mover, false),
            Bias::OneTwoDoubleFirst => Self::new(n, 1, 1, first_mover, true),
            Bias::OneTwo => Self::new(n, 1, 2, first_mover, false),
        }
        .expect("built-in biases are valid")
    }

    pub fn validate(&self) -> Result<(), GameError> {
        if self.maker_per_turn == 0 || self.breaker_per_turn == 0 {
            return Err(GameError::InvalidConfig(
                "each player claims at least one diagonal per turn".into(),
            ));
        }
        if self.breaker_double_first_only && self.breaker_per_turn != 1 {
            return Err(GameError::InvalidConfig(
                "the double-first variant needs one diagonal per later Breaker turn".into(),
            ));
        }
        Ok(())
    }

    pub fn bias(&self) -> Option<Bias> {
        match (
            self.maker_per_turn,
            self.breaker_per_turn,
            self.breaker_double_first_only,
        ) {
            (1, 1, false) => Some(Bias::Unbiased),
            (1, 1, true) => Some(Bias::OneTwoDoubleFirst),
            (1, 2, false) => Some(Bias::OneTwo),
            _ => None,
        }
    }

    /// Diagonals the player must claim on a turn, before capping by the
    /// number still free.
    pub fn quota(&self, player: Player, breaker_has_moved: bool) -> usize {
        match player {
            Player::Maker => self.maker_per_turn,
            Player::Breaker if self.breaker_double_first_only && !breaker_has_moved => 2,
            Player::Breaker => self.breaker_per_turn,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    MakerWon,
    BreakerWon,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ongoing => "ongoing",
            Status::MakerWon => "maker_won",
            Status::BreakerWon => "breaker_won",
        }
    }

    pub fn winner(self) -> Option<Player> {
        match self {
            Status::Ongoing => None,
            Status::MakerWon => Some(Player::Maker),
            Status::BreakerWon => Some(Player::Breaker),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub player: Player,
    pub diagonals: Vec<Diagonal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("it is {expected}'s turn, not {got}'s")]
    WrongTurn { expected: Player, got: Player },
    #[error("diagonal {0} is already occupied")]
    Occupied(Diagonal),
    #[error("malformed move: {0}")]
    Malformed(String),
    #[error("this turn claims exactly {expected} diagonal(s), got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("the game is already finished")]
    Finished,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Failures raised by the built-in strategies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy does not support this game: {0}")]
    Unsupported(String),
    #[error("it is not this strategy's turn")]
    NotToMove,
    #[error("strategy memory disagrees with the game history: {0}")]
    InconsistentMemory(String),
    #[error("strategy invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

impl From<PolygonError> for GameError {
    fn from(e: PolygonError) -> Self {
        GameError::Malformed(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    config: GameConfig,
    maker: DiagonalSet,
    breaker: DiagonalSet,
    to_move: Player,
    history: Vec<Move>,
    status: Status,
    witness: Option<Triangulation>,
}

pub fn new_game(config: GameConfig) -> Result<GameState, GameError> {
    config.validate()?;
    Ok(GameState {
        config,
        maker: DiagonalSet::empty(config.n),
        breaker: DiagonalSet::empty(config.n),
        to_move: config.first_mover,
        history: Vec::new(),
        status: Status::Ongoing,
        witness: None,
    })
}

/// Applies one turn and returns the resulting state.
pub fn apply_move(
    state: &GameState,
    player: Player,
    diagonals: &[Diagonal],
) -> Result<GameState, GameError> {
    let mut next = state.clone();
    next.play(player, diagonals)?;
    Ok(next)
}

impl GameState {
    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn n(&self) -> PolygonSize {
        self.config.n
    }

    pub fn maker(&self) -> &DiagonalSet {
        &self.maker
    }

    pub fn breaker(&self) -> &DiagonalSet {
        &self.breaker
    }

    pub fn claimed(&self, player: Player) -> &DiagonalSet {
        match player {
            Player::Maker => &self.maker,
            Player::Breaker => &self.breaker,
        }
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    /// Number of turns played so far.
    pub fn move_index(&self) -> usize {
        self.history.len()
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn status(&self) -> Status {
        self.status
    }

    /// Maker's completed triangulation once Maker has won.
    pub fn witness(&self) -> Option<&Triangulation> {
        self.witness.as_ref()
    }

    pub fn unclaimed(&self) -> DiagonalSet {
        self.maker.union(&self.breaker).complement()
    }

    pub fn turns_taken(&self, player: Player) -> usize {
        self.history.iter().filter(|m| m.player == player).count()
    }

    pub fn last_move_by(&self, player: Player) -> Option<&Move> {
        self.history.iter().rev().find(|m| m.player == player)
    }

    /// Diagonals the side to move must claim now.
    pub fn required_arity(&self) -> usize {
        let quota = self
            .config
            .quota(self.to_move, self.turns_taken(Player::Breaker) > 0);
        quota.min(self.unclaimed().len())
    }

    /// In-place form of [`apply_move`]; on error the state is unchanged.
    pub fn play(&mut self, player: Player, diagonals: &[Diagonal]) -> Result<(), GameError> {
        if self.status != Status::Ongoing {
            return Err(GameError::Finished);
        }
        if player != self.to_move {
            return Err(GameError::WrongTurn {
                expected: self.to_move,
                got: player,
            });
        }
        let n = self.config.n;
        let mut fresh = DiagonalSet::empty(n);
        for &d in diagonals {
            d.validate(n)?;
            if self.maker.contains(d) || self.breaker.contains(d) {
                return Err(GameError::Occupied(d));
            }
            if !fresh.insert(d) {
                return Err(GameError::Malformed(format!("{d} listed twice")));
            }
        }
        let expected = self.required_arity();
        if diagonals.len() != expected {
            return Err(GameError::WrongArity {
                expected,
                got: diagonals.len(),
            });
        }
        match player {
            Player::Maker => self.maker = self.maker.union(&fresh),
            Player::Breaker => self.breaker = self.breaker.union(&fresh),
        }
        self.history.push(Move {
            player,
            diagonals: diagonals.to_vec(),
        });
        self.to_move = player.other();
        self.refresh_status();
        Ok(())
    }

    fn refresh_status(&mut self) {
        if let Some(t) = contains_triangulation(self.config.n, &self.maker) {
            self.status = Status::MakerWon;
            self.witness = Some(t);
        } else if contains_triangulation(self.config.n, &self.breaker.complement()).is_none() {
            self.status = Status::BreakerWon;
        }
    }

    /// Replays a move list from a fresh game.
    pub fn replay(config: GameConfig, history: &[Move]) -> Result<Self, GameError> {
        let mut state = new_game(config)?;
        for m in history {
            state.play(m.player, &m.diagonals)?;
        }
        Ok(state)
    }
}
