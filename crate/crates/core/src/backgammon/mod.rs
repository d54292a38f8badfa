//! Complete cubeless backgammon rules: position representation, dice,
//! legal-move generation, terminal scoring with gammon and backgammon,
//! pip counts, hit-shot enumeration, and the canonical text format.

mod board;
mod dice;
mod movegen;
mod perft;
mod random;
mod shots;
pub mod task;
mod text;

pub use board::{Board, BoardError, Side, BAR_PIPS, CANONICAL_KEY_LEN, CHECKERS_PER_SIDE, STARTING};
pub use dice::{distinct_rolls, opening_roll, DiceRoll};
pub use movegen::{afterstates, legal_afterstates, CheckerMove, CheckerPlay, Move, MoveSet};
pub use perft::perft;
pub use random::random_board;
pub use shots::{shot_rolls, ShotError};
pub use task::BackgammonTask;
pub use text::{format_position, parse_position, ParseError};

#[cfg(test)]
pub(crate) mod testutil {
    use super::{Board, Side};

    /// Test board builder: checkers as (point, count) pairs per side, with
    /// point 25 standing for the bar. Unplaced checkers are borne off.
    pub(crate) fn board(white: &[(usize, u8)], black: &[(usize, u8)], to_move: Side) -> Board {
        let mut points = [0i8; 24];
        let mut bar = [0u8; 2];
        let mut placed = [0u8; 2];
        for &(p, n) in white {
            if p == 25 {
                bar[0] += n;
            } else {
                points[p - 1] += n as i8;
            }
            placed[0] += n;
        }
        for &(p, n) in black {
            if p == 25 {
                bar[1] += n;
            } else {
                points[p - 1] -= n as i8;
            }
            placed[1] += n;
        }
        let off = [15 - placed[0], 15 - placed[1]];
        Board::new(points, bar, off, to_move).expect("test board must be valid")
    }
}
