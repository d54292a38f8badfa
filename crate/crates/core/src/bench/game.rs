//! One full cubeless money game between two players.

use super::players::MatchPlayer;
use crate::backgammon::{opening_roll, DiceRoll, Side, STARTING};
use crate::engine::{mix, trial_rng};

// Lane constants keep the dice stream and per-ply decision seeds disjoint.
const DICE_LANE: u64 = 0x6469_6365;
const DECISION_LANE: u64 = 0x6d6f_7665;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameRecord {
    pub seed: u64,
    pub plies: u32,
    /// Signed points from White's perspective; 0 for a capped game.
    pub points: i8,
    pub capped: bool,
}

/// Plays one game to completion (or to the safety ply cap). Dice come from
/// a stream seeded by `seed`; each ply's decision gets its own derived seed,
/// so two games with the same seed and deterministic players are identical
/// move for move.
pub fn play_game(
    white: &dyn MatchPlayer,
    black: &dyn MatchPlayer,
    seed: u64,
    max_plies: u32,
) -> GameRecord {
    let mut dice = trial_rng(mix(seed, DICE_LANE));
    let (first, mut roll) = opening_roll(&mut dice);
    let mut board = STARTING.with_to_move(first);
    let mut plies = 0u32;
    loop {
        let player = match board.to_move() {
            Side::White => white,
            Side::Black => black,
        };
        let decision_seed = mix(mix(seed, DECISION_LANE), plies as u64);
        board = player.choose_move(&board, roll, decision_seed);
        plies += 1;
        if let Some(points) = board.terminal_value() {
            return GameRecord {
                seed,
                plies,
                points,
                capped: false,
            };
        }
        if plies >= max_plies {
            return GameRecord {
                seed,
                plies,
                points: 0,
                capped: true,
            };
        }
        roll = DiceRoll::sample(&mut dice);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::players::{PlayerSpec, RolloutParams};

    #[test]
    fn pip_self_play_terminates_and_is_deterministic() {
        let spec = PlayerSpec::parse("pip").unwrap();
        let p1 = spec.build_player(&RolloutParams::default()).unwrap();
        let p2 = spec.build_player(&RolloutParams::default()).unwrap();
        let a = play_game(p1.as_ref(), p2.as_ref(), 31, 2000);
        let b = play_game(p1.as_ref(), p2.as_ref(), 31, 2000);
        assert_eq!(a, b);
        assert!(!a.capped);
        assert!(a.points != 0);
        assert!((1..=3).contains(&a.points.abs()));
    }

    #[test]
    fn ply_cap_produces_zero_point_game() {
        let spec = PlayerSpec::parse("random").unwrap();
        let p = spec.build_player(&RolloutParams::default()).unwrap();
        let r = play_game(p.as_ref(), p.as_ref(), 7, 10);
        assert!(r.capped);
        assert_eq!(r.points, 0);
        assert_eq!(r.plies, 10);
    }
}
