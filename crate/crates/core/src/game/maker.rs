use serde::{Deserialize, Serialize};

use super::{Bias, GameState, Player, StrategyError};
use crate::polygon::{Diagonal, DiagonalSet, PolygonSize};

/// Maker's reduced polygon: the vertices not yet cut off, in label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MakerMemory {
    n: PolygonSize,
    alive: Vec<usize>,
    claimed: Vec<Diagonal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MakerMove {
    pub diagonal: Diagonal,
    /// The vertex this ear removes from the reduced polygon.
    pub cut: usize,
}

impl MakerMemory {
    pub fn new(n: PolygonSize) -> Self {
        Self {
            n,
            alive: (0..n.get()).collect(),
            claimed: Vec::new(),
        }
    }

    /// Rebuilds the memory from the Maker moves in `state`, provided every
    /// one of them was an ear cut of the reduced polygon at the time.
    pub fn reconstruct(state: &GameState) -> Result<Self, StrategyError> {
        let mut mem = Self::new(state.n());
        for m in state.history().iter().filter(|m| m.player == Player::Maker) {
            for &d in &m.diagonals {
                let cut = mem.ear_apex(d).ok_or_else(|| {
                    StrategyError::InconsistentMemory(format!(
                        "Maker's {d} is not an ear of the reduced polygon"
                    ))
                })?;
                mem.commit(MakerMove { diagonal: d, cut });
            }
        }
        Ok(mem)
    }

    pub fn alive(&self) -> &[usize] {
        &self.alive
    }

    pub fn claimed(&self) -> &[Diagonal] {
        &self.claimed
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.binary_search(&v).is_ok()
    }

    fn position(&self, v: usize) -> Option<usize> {
        self.alive.binary_search(&v).ok()
    }

    pub fn pred(&self, v: usize) -> Option<usize> {
        let p = self.position(v)?;
        Some(self.alive[(p + self.alive.len() - 1) % self.alive.len()])
    }

    pub fn succ(&self, v: usize) -> Option<usize> {
        let p = self.position(v)?;
        Some(self.alive[(p + 1) % self.alive.len()])
    }

    /// Cyclic distance along the reduced polygon, if both are alive.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let (pu, pv) = (self.position(u)?, self.position(v)?);
        let d = pu.abs_diff(pv);
        Some(d.min(self.alive.len() - d))
    }

    /// The ear of `v` in the reduced polygon.
    pub fn ear(&self, v: usize) -> Option<Diagonal> {
        if self.alive.len() < 4 {
            return None;
        }
        let (p, s) = (self.pred(v)?, self.succ(v)?);
        Some(Diagonal::new(self.n, p, s).expect("ear of a reduced polygon is a diagonal"))
    }

    fn ear_apex(&self, d: Diagonal) -> Option<usize> {
        self.alive.iter().copied().find(|&v| self.ear(v) == Some(d))
    }

    pub fn commit(&mut self, mv: MakerMove) {
        if let Some(p) = self.position(mv.cut) {
            self.alive.remove(p);
        }
        self.claimed.push(mv.diagonal);
    }
}

/// Breaker chords with both endpoints alive and not adjacent in the reduced polygon.
pub fn live_chords(memory: &MakerMemory, breaker: &DiagonalSet) -> Vec<Diagonal> {
    breaker
        .iter()
        .filter(|d| memory.distance(d.i(), d.j()).is_some_and(|k| k >= 2))
        .collect()
}

/// The ear-cut strategy for Maker in the `(1:1)` game.
pub fn maker_strategy_move(
    state: &GameState,
    memory: &MakerMemory,
) -> Result<MakerMove, StrategyError> {
    if state.config().bias() != Some(Bias::Unbiased) {
        return Err(StrategyError::Unsupported(
            "Maker's ear-cut strategy plays the (1:1) game".into(),
        ));
    }
    if state.to_move() != Player::Maker {
        return Err(StrategyError::NotToMove);
    }
    if memory.n != state.n()
        || memory.claimed.len() != state.maker().len()
        || !memory.claimed.iter().all(|&d| state.maker().contains(d))
    {
        return Err(StrategyError::InconsistentMemory(
            "remembered claims differ from Maker's diagonals".into(),
        ));
    }
    if memory.alive.len() < 4 {
        return Err(StrategyError::Invariant(
            "reduced polygon is a triangle but the game goes on".into(),
        ));
    }
    let live = live_chords(memory, state.breaker());
    let cut = match live.as_slice() {
        [] => memory.alive[0],
        [d] => d.i(),
        many => {
            let list: Vec<String> = many.iter().map(ToString::to_string).collect();
            return Err(StrategyError::Invariant(format!(
                "several live Breaker chords: {}",
                list.join(", ")
            )));
        }
    };
    let diagonal = memory.ear(cut).expect("cut vertex is alive");
    if state.breaker().contains(diagonal) || state.maker().contains(diagonal) {
        return Err(StrategyError::Invariant(format!("ear {diagonal} is taken")));
    }
    Ok(MakerMove { diagonal, cut })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{new_game, GameConfig};
    use crate::triangulation::is_triangulation;

    fn p(n: usize) -> PolygonSize {
        PolygonSize::new(n).unwrap()
    }

    fn d(n: usize, a: usize, b: usize) -> Diagonal {
        Diagonal::new(p(n), a, b).unwrap()
    }

    #[test]
    fn answers_a_live_chord_by_cutting_its_smaller_end() {
        let cfg = GameConfig::with_bias(p(5), Bias::Unbiased, Player::Breaker);
        let mut g = new_game(cfg).unwrap();
        g.play(Player::Breaker, &[d(5, 0, 2)]).unwrap();
        let mem = MakerMemory::new(p(5));
        let mv = maker_strategy_move(&g, &mem).unwrap();
        assert_eq!(mv.cut, 0);
        assert_eq!(mv.diagonal, d(5, 4, 1));
    }

    #[test]
    fn hand_walk_on_a_hexagon() {
        let n = p(6);
        let cfg = GameConfig::with_bias(n, Bias::Unbiased, Player::Maker);
        let mut g = new_game(cfg).unwrap();
        let mut mem = MakerMemory::new(n);
        let mut maker_moves = Vec::new();
        for reply in [d(6, 0, 3), d(6, 1, 4)] {
            let mv = maker_strategy_move(&g, &mem).unwrap();
            g.play(Player::Maker, &[mv.diagonal]).unwrap();
            mem.commit(mv);
            maker_moves.push(mv.diagonal);
            // both replies touch a vertex already cut, so they stay dead
            g.play(Player::Breaker, &[reply]).unwrap();
            assert!(live_chords(&mem, g.breaker()).is_empty());
        }
        let mv = maker_strategy_move(&g, &mem).unwrap();
        g.play(Player::Maker, &[mv.diagonal]).unwrap();
        maker_moves.push(mv.diagonal);
        assert_eq!(maker_moves, vec![d(6, 5, 1), d(6, 5, 2), d(6, 5, 3)]);
        assert_eq!(g.status(), crate::game::Status::MakerWon);
        assert!(is_triangulation(n, g.maker()));
    }

    #[test]
    fn dead_chord_is_ignored() {
        // After cutting 0, Maker's own (5,1) is a side of the reduced polygon;
        // a Breaker chord between adjacent survivors is equally dead.
        let n = p(6);
        let mut mem = MakerMemory::new(n);
        mem.commit(MakerMove { diagonal: d(6, 5, 1), cut: 0 });
        let breaker = DiagonalSet::from_pairs(n, [(1, 5)]).unwrap();
        assert!(live_chords(&mem, &breaker).is_empty());
        assert_eq!(mem.ear(mem.alive()[0]), Some(d(6, 5, 2)));
        let breaker = DiagonalSet::from_pairs(n, [(2, 5)]).unwrap();
        assert_eq!(live_chords(&mem, &breaker), vec![d(6, 2, 5)]);
    }

    #[test]
    fn plain_ear_cuts_triangulate() {
        let n = p(9);
        let cfg = GameConfig::with_bias(n, Bias::Unbiased, Player::Maker);
        let mut g = new_game(cfg).unwrap();
        let mut mem = MakerMemory::new(n);
        for _ in 0..6 {
            let mv = maker_strategy_move(&g, &mem).unwrap();
            g.play(Player::Maker, &[mv.diagonal]).unwrap();
            mem.commit(mv);
            if g.status() != crate::game::Status::Ongoing {
                break;
            }
            let free = g.unclaimed().iter().last().unwrap();
            g.play(Player::Breaker, &[free]).unwrap();
        }
        assert_eq!(g.status(), crate::game::Status::MakerWon);
        assert!(is_triangulation(n, g.maker()));
        assert_eq!(MakerMemory::reconstruct(&g).unwrap(), mem);
    }

    #[test]
    fn refuses_other_biases() {
        let cfg = GameConfig::with_bias(p(6), Bias::OneTwoDoubleFirst, Player::Maker);
        let g = new_game(cfg).unwrap();
        assert!(matches!(
            maker_strategy_move(&g, &MakerMemory::new(p(6))),
            Err(StrategyError::Unsupported(_))
        ));
    }
}
