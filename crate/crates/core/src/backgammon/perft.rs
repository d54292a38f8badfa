//! Perft-style regression surface for the move generator.
//!
//! `perft(board, d)` sums afterstate counts over all 21 distinct dice
//! outcomes, weighted 2 for non-doubles and 1 for doubles (36 total),
//! recursing through each afterstate to depth `d` plies. Terminal
//! afterstates are not expanded further.

use super::board::Board;
use super::dice::distinct_rolls;
use super::movegen::afterstates;

pub fn perft(board: &Board, depth: u32) -> u64 {
    assert!(depth >= 1, "perft depth must be at least 1");
    debug_assert!(!board.is_terminal());
    let mut total = 0u64;
    for roll in distinct_rolls() {
        let weight = roll.weight() as u64;
        let children = afterstates(board, roll);
        if depth == 1 {
            total += weight * children.len() as u64;
        } else {
            for child in &children {
                if !child.is_terminal() {
                    total += weight * perft(child, depth - 1);
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgammon::testutil::board;
    use crate::backgammon::{Side, STARTING};

    #[test]
    fn forced_single_move_counts_36() {
        // White on the bar with every entry point blocked: one forced dance
        // candidate for each of the 21 rolls, weighted to 36.
        let b = board(
            &[(25, 1), (1, 14)],
            &[(19, 2), (20, 2), (21, 2), (22, 2), (23, 2), (24, 5)],
            Side::White,
        );
        assert_eq!(perft(&b, 1), 36);
    }

    #[test]
    fn depth_one_from_opening_is_stable() {
        // Frozen counts, independently confirmed by the naive-generator
        // cross-check in the integration tests.
        assert_eq!(perft(&STARTING, 1), 637);
    }

    #[test]
    fn depth_two_from_opening_is_stable() {
        assert_eq!(perft(&STARTING, 2), 419_783);
    }
}
