use serde::{Deserialize, Serialize};

use super::{Bias, GameState, Player, StrategyError};
use crate::blocker::BlockerStructure;
use crate::polygon::{Diagonal, DiagonalSet, PolygonSize};

/// Breaker's pairing memory: the anchor `a` of the two net ears
/// `(a, a+2)` and `(a+1, a+3)`, fixed on Breaker's first turn.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakerMemory {
    anchor: Option<usize>,
}

impl BreakerMemory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn anchor(&self) -> Option<usize> {
        self.anchor
    }

    /// Recovers the anchor from Breaker's first turn and checks that every
    /// later Breaker claim belongs to the pair map.
    pub fn reconstruct(state: &GameState) -> Result<Self, StrategyError> {
        let n = state.n();
        let mut turns = state
            .history()
            .iter()
            .filter(|m| m.player == Player::Breaker);
        let Some(first) = turns.next() else {
            return Ok(Self::new());
        };
        let anchor = (0..n.get())
            .find(|&a| {
                let net = net_ears(n, a);
                first.diagonals.len() == 2 && net.iter().all(|e| first.diagonals.contains(e))
            })
            .ok_or_else(|| {
                StrategyError::InconsistentMemory("Breaker's first turn is not a net".into())
            })?;
        let mem = Self {
            anchor: Some(anchor),
        };
        for m in turns {
            for &d in &m.diagonals {
                if mem.pair_owner(n, d).is_none() {
                    return Err(StrategyError::InconsistentMemory(format!(
                        "Breaker's {d} is outside the pair map"
                    )));
                }
            }
        }
        Ok(mem)
    }

    /// Vertices `x` outside `{a, .., a+3}`, each owning the pair
    /// `(x, a+1)`, `(x, a+2)`.
    pub fn pairs(&self, n: PolygonSize) -> Vec<(usize, Diagonal, Diagonal)> {
        let Some(a) = self.anchor else {
            return Vec::new();
        };
        let size = n.get();
        let (a1, a2) = ((a + 1) % size, (a + 2) % size);
        let mut out: Vec<_> = (4..size)
            .map(|t| (a + t) % size)
            .map(|x| {
                let p = Diagonal::new(n, x, a1).expect("pair element is a diagonal");
                let q = Diagonal::new(n, x, a2).expect("pair element is a diagonal");
                (x, p, q)
            })
            .collect();
        out.sort_by_key(|&(x, _, _)| x);
        out
    }

    fn pair_owner(&self, n: PolygonSize, d: Diagonal) -> Option<usize> {
        self.pairs(n)
            .into_iter()
            .find(|&(_, p, q)| p == d || q == d)
            .map(|(x, _, _)| x)
    }

    /// Breaker owns at least one element of the pair of `x`.
    pub fn secured(&self, state: &GameState, x: usize) -> bool {
        self.pairs(state.n())
            .into_iter()
            .find(|&(y, _, _)| y == x)
            .is_some_and(|(_, p, q)| state.breaker().contains(p) || state.breaker().contains(q))
    }

    /// Breaker's finished claims read through the pairing: net `(a, a+2),
    /// (a+1, a+3)` and one beam per paired vertex. Beams that happen to be
    /// ear-covers make the canonical parse report a longer net.
    pub fn pairing_structure(&self, state: &GameState) -> Option<BlockerStructure> {
        let a = self.anchor?;
        let n = state.n();
        let size = n.get();
        let beams = (4..size)
            .map(|t| {
                let x = (a + t) % size;
                let p = Diagonal::new(n, x, (a + 1) % size).ok()?;
                let q = Diagonal::new(n, x, (a + 2) % size).ok()?;
                match (state.breaker().contains(p), state.breaker().contains(q)) {
                    (true, false) => Some(1),
                    (false, true) => Some(2),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(BlockerStructure {
            offset: a,
            m: 1,
            beams,
        })
    }

    /// Completes Breaker's claims to a full blocker avoiding Maker's
    /// diagonals, if the pairing still allows it.
    pub fn disjoint_blocker(&self, state: &GameState) -> Option<DiagonalSet> {
        let n = state.n();
        let a = self.anchor?;
        let (maker, breaker) = (state.maker(), state.breaker());
        let mut out = DiagonalSet::empty(n);
        for e in net_ears(n, a) {
            if maker.contains(e) {
                return None;
            }
            out.insert(e);
        }
        for (_, p, q) in self.pairs(n) {
            let pick = if breaker.contains(p) {
                p
            } else if breaker.contains(q) {
                q
            } else if !maker.contains(p) {
                p
            } else if !maker.contains(q) {
                q
            } else {
                return None;
            };
            out.insert(pick);
        }
        Some(out)
    }
}

fn net_ears(n: PolygonSize, a: usize) -> [Diagonal; 2] {
    let s = n.get();
    [
        Diagonal::new(n, a, (a + 2) % s).expect("net ear"),
        Diagonal::new(n, (a + 1) % s, (a + 3) % s).expect("net ear"),
    ]
}

/// The pairing strategy for Breaker in the `(1:2)` game where Breaker's
/// first turn claims two diagonals and every later turn one.
pub fn breaker_strategy_moves(
    state: &GameState,
    memory: &mut BreakerMemory,
) -> Result<Vec<Diagonal>, StrategyError> {
    let n = state.n();
    if n.get() < 5 {
        return Err(StrategyError::Unsupported(
            "Breaker cannot win on a quadrilateral".into(),
        ));
    }
    if state.config().bias() != Some(Bias::OneTwoDoubleFirst) {
        return Err(StrategyError::Unsupported(
            "the pairing strategy plays the double-first (1:2) game".into(),
        ));
    }
    if state.to_move() != Player::Breaker {
        return Err(StrategyError::NotToMove);
    }
    let breaker_turns = state.turns_taken(Player::Breaker);
    let Some(a) = memory.anchor else {
        if breaker_turns > 0 {
            return Err(StrategyError::InconsistentMemory(
                "no anchor recorded although Breaker has moved".into(),
            ));
        }
        let opening: Vec<Diagonal> = state
            .last_move_by(Player::Maker)
            .map(|m| m.diagonals.clone())
            .unwrap_or_default();
        let size = n.get();
        let a = (0..size)
            .find(|&a| {
                let (a1, a2) = ((a + 1) % size, (a + 2) % size);
                opening
                    .iter()
                    .all(|d| !d.has_endpoint(a1) && !d.has_endpoint(a2))
            })
            .expect("a polygon with n >= 5 has room for the net");
        memory.anchor = Some(a);
        return Ok(net_ears(n, a).to_vec());
    };
    if breaker_turns == 0 || !net_ears(n, a).iter().all(|&e| state.breaker().contains(e)) {
        return Err(StrategyError::InconsistentMemory(format!(
            "Breaker does not hold the net at anchor {a}"
        )));
    }
    let taken = |d: Diagonal| state.maker().contains(d) || state.breaker().contains(d);
    let pairs = memory.pairs(n);
    if let Some(last) = state.last_move_by(Player::Maker) {
        for &d in &last.diagonals {
            for &(_, p, q) in &pairs {
                if d == p && !taken(q) {
                    return Ok(vec![q]);
                }
                if d == q && !taken(p) {
                    return Ok(vec![p]);
                }
            }
        }
    }
    if let Some(&(x, _, _)) = pairs.iter().find(|&&(_, p, q)| {
        let mine = state.breaker().contains(p) || state.breaker().contains(q);
        !mine && (state.maker().contains(p) || state.maker().contains(q))
    }) {
        return Err(StrategyError::Invariant(format!(
            "Maker holds part of the pair of {x} and Breaker none"
        )));
    }
    pairs
        .iter()
        .find(|&&(_, p, q)| !taken(p) && !taken(q))
        .map(|&(_, p, _)| vec![p])
        .ok_or_else(|| StrategyError::Invariant("every pair is settled but the game goes on".into()))
}
