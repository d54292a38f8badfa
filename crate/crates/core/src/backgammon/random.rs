//! Random rule-valid positions, for fuzzing the move generator and the
//! text round-trip. These are static-validity samples (15 checkers per
//! side, no shared points, non-terminal), not necessarily reachable from
//! the opening.

use super::board::{Board, Side};
use rand::Rng;

pub fn random_board<R: Rng>(rng: &mut R) -> Board {
    loop {
        let mut points = [0i8; 24];
        let mut bar = [0u8; 2];
        let mut off = [0u8; 2];
        for side in [Side::White, Side::Black] {
            let i = side.index();
            off[i] = rng.random_range(0..=4);
            if rng.random_range(0..4) == 0 {
                bar[i] = rng.random_range(1..=2);
            }
            let mut remaining = 15 - off[i] - bar[i];
            let mut guard = 0;
            while remaining > 0 {
                guard += 1;
                if guard > 200 {
                    break;
                }
                let p = rng.random_range(0..24usize);
                let taken_by_opponent = match side {
                    Side::White => points[p] < 0,
                    Side::Black => points[p] > 0,
                };
                if taken_by_opponent {
                    continue;
                }
                let n = rng.random_range(1..=remaining.min(5));
                match side {
                    Side::White => points[p] += n as i8,
                    Side::Black => points[p] -= n as i8,
                }
                remaining -= n;
            }
            if remaining > 0 {
                off[i] += remaining; // placement starved; dump the rest off
            }
        }
        let to_move = if rng.random_range(0..2) == 0 {
            Side::White
        } else {
            Side::Black
        };
        if let Ok(b) = Board::new(points, bar, off, to_move) {
            if !b.is_terminal() {
                return b;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_boards_are_valid_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let boards: Vec<Board> = (0..500).map(|_| random_board(&mut rng)).collect();
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let again: Vec<Board> = (0..500).map(|_| random_board(&mut rng2)).collect();
        assert_eq!(boards, again);
        assert!(boards.iter().all(|b| !b.is_terminal()));
        // Decent variety.
        let with_bar = boards.iter().filter(|b| b.bar(Side::White) > 0).count();
        assert!(with_bar > 50);
    }
}
