use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use triblock::blocker::{parse_structure, BlockerStructure};
use triblock::game::{
    breaker_strategy_moves, maker_strategy_move, new_game, solve_state, solver_limit, Bias,
    BreakerMemory, GameConfig, GameError, GameState, MakerMemory, Move, Player, SolverOptions,
    Status,
};
use triblock::polygon::{Diagonal, PolygonSize};

use crate::error::ApiError;

pub const MIN_N: usize = 4;
pub const MAX_N: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HumanRole {
    Maker,
    Breaker,
    None,
}

impl HumanRole {
    pub fn player(self) -> Option<Player> {
        match self {
            HumanRole::Maker => Some(Player::Maker),
            HumanRole::Breaker => Some(Player::Breaker),
            HumanRole::None => None,
        }
    }
}

/// Which policy produced a suggested or engine move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    PaperMaker,
    PaperBreaker,
    Solver,
    FirstAvailable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advice {
    pub diagonals: Vec<Diagonal>,
    pub source: Source,
}

/// A move for the side to move: the built-in strategy when it serves this
/// side and the history is one it could have produced, else the exact
/// solver on small boards, else the first free diagonals.
pub fn advise(state: &GameState) -> Advice {
    let player = state.to_move();
    let bias = state.config().bias();
    if player == Player::Maker && bias == Some(Bias::Unbiased) {
        if let Ok(mv) = MakerMemory::reconstruct(state).and_then(|m| maker_strategy_move(state, &m)) {
            return Advice {
                diagonals: vec![mv.diagonal],
                source: Source::PaperMaker,
            };
        }
    }
    if player == Player::Breaker && bias == Some(Bias::OneTwoDoubleFirst) && state.n().get() >= 5 {
        if let Ok(ds) = BreakerMemory::reconstruct(state)
            .and_then(|mut m| breaker_strategy_moves(state, &mut m))
        {
            return Advice {
                diagonals: ds,
                source: Source::PaperBreaker,
            };
        }
    }
    if state.n().get() <= solver_limit(state.config(), false) {
        if let Ok(Some(best)) = solve_state(state, SolverOptions::default()).map(|s| s.best_move) {
            return Advice {
                diagonals: best,
                source: Source::Solver,
            };
        }
    }
    Advice {
        diagonals: state.unclaimed().iter().take(state.required_arity()).collect(),
        source: Source::FirstAvailable,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewGame {
    pub n: usize,
    pub human: HumanRole,
    #[serde(default = "default_bias")]
    pub bias: String,
    #[serde(default = "default_first")]
    pub first: Player,
}

fn default_bias() -> String {
    "1:1".into()
}

fn default_first() -> Player {
    Player::Maker
}

impl NewGame {
    pub fn config(&self) -> Result<GameConfig, ApiError> {
        if !(MIN_N..=MAX_N).contains(&self.n) {
            return Err(ApiError::BadRequest(format!(
                "n must lie in [{MIN_N}, {MAX_N}], got {}",
                self.n
            )));
        }
        let bias = match self.bias.as_str() {
            "1:1" => Bias::Unbiased,
            "1:2" => Bias::OneTwoDoubleFirst,
            other => {
                return Err(ApiError::BadRequest(format!(
                    "bias must be \"1:1\" or \"1:2\", got {other:?}"
                )))
            }
        };
        let n = PolygonSize::new(self.n).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        Ok(GameConfig::with_bias(n, bias, self.first))
    }
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// One game between a human and the engine. The engine's strategy memories
/// are rebuilt from the history on demand, so the history is the whole state.
#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    human: HumanRole,
    state: GameState,
    created: u64,
    updated: u64,
}

impl Session {
    pub fn create(id: String, request: &NewGame) -> Result<Self, ApiError> {
        let config = request.config()?;
        let state = new_game(config).map_err(ApiError::from)?;
        let t = now();
        let mut s = Self {
            id,
            human: request.human,
            state,
            created: t,
            updated: t,
        };
        s.run_engine()?;
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn human(&self) -> HumanRole {
        self.human
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    fn engine_to_move(&self) -> bool {
        self.state.status() == Status::Ongoing && Some(self.state.to_move()) != self.human.player()
    }

    fn run_engine(&mut self) -> Result<Vec<Diagonal>, ApiError> {
        let mut reply = Vec::new();
        while self.engine_to_move() {
            let advice = advise(&self.state);
            let player = self.state.to_move();
            self.state
                .play(player, &advice.diagonals)
                .map_err(|e| ApiError::Internal(format!("engine produced an illegal move: {e}")))?;
            reply.extend(advice.diagonals);
        }
        Ok(reply)
    }

    /// Applies the human's turn and the engine's answer; returns the answer.
    pub fn submit(&mut self, pairs: &[(usize, usize)]) -> Result<Vec<Diagonal>, ApiError> {
        if self.state.status() != Status::Ongoing {
            return Err(ApiError::Finished("the game is over".into()));
        }
        let Some(me) = self.human.player() else {
            return Err(ApiError::NotYourTurn("the engine plays both sides".into()));
        };
        if self.state.to_move() != me {
            return Err(ApiError::NotYourTurn(format!("it is {}'s turn", self.state.to_move())));
        }
        let n = self.state.n();
        let diagonals = pairs
            .iter()
            .map(|&(a, b)| Diagonal::new(n, a, b))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ApiError::BadRequest(e.to_string()))?;
        self.state.play(me, &diagonals)?;
        let reply = self.run_engine();
        self.updated = now();
        reply
    }

    pub fn hint(&self) -> Result<Advice, ApiError> {
        if self.state.status() != Status::Ongoing {
            return Err(ApiError::Finished("the game is over".into()));
        }
        if Some(self.state.to_move()) != self.human.player() {
            return Err(ApiError::NotYourTurn("hints are for the human's turn".into()));
        }
        Ok(advise(&self.state))
    }

    pub fn view(&self, engine_reply: Option<Vec<Diagonal>>) -> StateView {
        let s = &self.state;
        let cfg = s.config();
        StateView {
            id: self.id.clone(),
            n: s.n().get(),
            bias: cfg.bias().map_or("custom", Bias::as_str).to_string(),
            human: self.human,
            first: cfg.first_mover,
            maker: s.maker().iter().collect(),
            breaker: s.breaker().iter().collect(),
            turn: (s.status() == Status::Ongoing).then(|| s.to_move()),
            status: s.status(),
            history: s.history().to_vec(),
            witness: s.witness().map(|t| t.diagonals().iter().collect()),
            breaker_structure: parse_structure(s.n(), s.breaker()).ok(),
            engine_reply,
            created: self.created,
            updated: self.updated,
        }
    }

    pub fn snapshot(&self) -> SessionSnapshot {
        let cfg = self.state.config();
        SessionSnapshot {
            id: self.id.clone(),
            request: NewGame {
                n: cfg.n.get(),
                human: self.human,
                bias: cfg.bias().map_or("custom", Bias::as_str).to_string(),
                first: cfg.first_mover,
            },
            history: self.state.history().to_vec(),
            created: self.created,
            updated: self.updated,
        }
    }

    /// Rebuilds a session by replaying its history through the rules engine.
    pub fn restore(snap: &SessionSnapshot) -> Result<Self, ApiError> {
        let config = snap.request.config()?;
        let state = GameState::replay(config, &snap.history).map_err(ApiError::from)?;
        Ok(Self {
            id: snap.id.clone(),
            human: snap.request.human,
            state,
            created: snap.created,
            updated: snap.updated,
        })
    }
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::WrongTurn { .. } => ApiError::NotYourTurn(e.to_string()),
            GameError::Occupied(_) => ApiError::Occupied(e.to_string()),
            GameError::Finished => ApiError::Finished(e.to_string()),
            GameError::Malformed(_) | GameError::WrongArity { .. } | GameError::InvalidConfig(_) => {
                ApiError::BadRequest(e.to_string())
            }
        }
    }
}

/// The wire form of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub id: String,
    pub n: usize,
    pub bias: String,
    pub human: HumanRole,
    pub first: Player,
    pub maker: Vec<Diagonal>,
    pub breaker: Vec<Diagonal>,
    /// `null` once the game is over.
    pub turn: Option<Player>,
    pub status: Status,
    pub history: Vec<Move>,
    pub witness: Option<Vec<Diagonal>>,
    /// Breaker's diagonals read as a blocker normal form, when they are one.
    pub breaker_structure: Option<BlockerStructure>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub engine_reply: Option<Vec<Diagonal>>,
    pub created: u64,
    pub updated: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionSnapshot {
    pub id: String,
    pub request: NewGame,
    pub history: Vec<Move>,
    pub created: u64,
    pub updated: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(n: usize, human: HumanRole, bias: &str, first: Player) -> NewGame {
        NewGame {
            n,
            human,
            bias: bias.into(),
            first,
        }
    }

    #[test]
    fn human_maker_moves_first() {
        let s = Session::create("a".into(), &req(8, HumanRole::Maker, "1:1", Player::Maker)).unwrap();
        assert!(s.state().history().is_empty());
        assert_eq!(s.view(None).turn, Some(Player::Maker));
    }

    #[test]
    fn engine_maker_opens_with_its_ear_cut() {
        let s = Session::create("a".into(), &req(8, HumanRole::Breaker, "1:1", Player::Maker)).unwrap();
        let h = s.state().history();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].diagonals, vec![Diagonal::new(PolygonSize::new(8).unwrap(), 7, 1).unwrap()]);
    }

    #[test]
    fn invalid_requests() {
        for bad in [
            req(3, HumanRole::Maker, "1:1", Player::Maker),
            req(51, HumanRole::Maker, "1:1", Player::Maker),
            req(8, HumanRole::Maker, "2:1", Player::Maker),
        ] {
            assert!(matches!(
                Session::create("a".into(), &bad),
                Err(ApiError::BadRequest(_))
            ));
        }
    }

    #[test]
    fn hints_delegate_to_the_strategies() {
        let s = Session::create("a".into(), &req(6, HumanRole::Maker, "1:1", Player::Maker)).unwrap();
        assert_eq!(s.hint().unwrap().source, Source::PaperMaker);
        let s = Session::create("b".into(), &req(8, HumanRole::Breaker, "1:2", Player::Maker)).unwrap();
        assert_eq!(s.hint().unwrap().source, Source::PaperBreaker);
        assert_eq!(s.hint().unwrap().diagonals.len(), 2);
    }

    #[test]
    fn occupied_leaves_state_unchanged() {
        let mut s = Session::create("a".into(), &req(8, HumanRole::Breaker, "1:1", Player::Maker)).unwrap();
        let before = s.state().clone();
        assert!(matches!(s.submit(&[(1, 7)]), Err(ApiError::Occupied(_))));
        assert_eq!(s.state(), &before);
    }

    #[test]
    fn rule_errors_map_to_wire_codes() {
        let wrong = GameError::WrongTurn {
            expected: Player::Maker,
            got: Player::Breaker,
        };
        assert_eq!(ApiError::from(wrong).code(), "not_your_turn");
        assert_eq!(ApiError::from(GameError::Finished).code(), "finished");
        let arity = GameError::WrongArity { expected: 1, got: 2 };
        assert_eq!(ApiError::from(arity).code(), "bad_request");
    }

    #[test]
    fn engine_only_session_finishes_on_creation() {
        let s = Session::create("a".into(), &req(9, HumanRole::None, "1:2", Player::Maker)).unwrap();
        assert_eq!(s.state().status(), Status::BreakerWon);
        let s2 = Session::restore(&s.snapshot()).unwrap();
        assert_eq!(s2.state(), s.state());
    }
}
