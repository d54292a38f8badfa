//! Independent reference move generator, written directly from the rules of
//! play with no shared logic with the fast generator: both colors are
//! handled explicitly (no mirroring), sequences are enumerated as explicit
//! die orders, and maximality plus the higher-die rule are applied as a
//! post-filter over complete sequences. Every intermediate board passes
//! through the validating constructor.

use rollout_core::backgammon::{Board, DiceRoll, Side};

pub fn naive_afterstates(board: &Board, roll: DiceRoll) -> Vec<Board> {
    let mover = board.to_move();
    let orders: Vec<Vec<u8>> = if roll.is_double() {
        vec![vec![roll.d1(); 4]]
    } else {
        vec![
            vec![roll.d1(), roll.d2()],
            vec![roll.d2(), roll.d1()],
        ]
    };

    // (final board, dice used, first die of the order that produced it)
    let mut outcomes: Vec<(Board, usize, u8)> = Vec::new();
    for order in &orders {
        dfs(board, mover, order, 0, order[0], &mut outcomes);
    }
    let max_used = outcomes.iter().map(|o| o.1).max().unwrap_or(0);

    let kept: Vec<Board> = if max_used == 0 {
        vec![*board]
    } else if !roll.is_double() && max_used == 1 {
        // Only one die playable; the higher must be played if it can be.
        let hi = roll.high();
        let hi_boards: Vec<Board> = outcomes
            .iter()
            .filter(|o| o.1 == 1 && o.2 == hi)
            .map(|o| o.0)
            .collect();
        if hi_boards.is_empty() {
            outcomes
                .iter()
                .filter(|o| o.1 == 1)
                .map(|o| o.0)
                .collect()
        } else {
            hi_boards
        }
    } else {
        outcomes
            .iter()
            .filter(|o| o.1 == max_used)
            .map(|o| o.0)
            .collect()
    };

    let mut afterstates: Vec<Board> = kept.into_iter().map(|b| b.passed()).collect();
    afterstates.sort_by_key(Board::canonical_key);
    afterstates.dedup();
    afterstates
}

/// Weighted afterstate counts over all 21 distinct rolls, recursing through
/// non-terminal afterstates; the reference for the fast perft.
pub fn naive_perft(board: &Board, depth: u32) -> u64 {
    assert!(depth >= 1);
    let mut total = 0;
    for roll in rollout_core::backgammon::distinct_rolls() {
        let weight = roll.weight() as u64;
        let children = naive_afterstates(board, roll);
        if depth == 1 {
            total += weight * children.len() as u64;
        } else {
            for child in &children {
                if child.terminal_value().is_none() {
                    total += weight * naive_perft(child, depth - 1);
                }
            }
        }
    }
    total
}

fn dfs(
    board: &Board,
    mover: Side,
    dice_left: &[u8],
    used: usize,
    first_die: u8,
    outcomes: &mut Vec<(Board, usize, u8)>,
) {
    outcomes.push((*board, used, first_die));
    let Some((&die, rest)) = dice_left.split_first() else {
        return;
    };
    for next in single_die_moves(board, mover, die) {
        dfs(&next, mover, rest, used + 1, first_die, outcomes);
    }
}

fn single_die_moves(board: &Board, mover: Side, die: u8) -> Vec<Board> {
    let d = die as usize;
    let mut out = Vec::new();
    match mover {
        Side::White => {
            if board.bar(Side::White) > 0 {
                // Must enter from the bar, onto the opponent's home board.
                let dest = 25 - d;
                if board.checkers_on(Side::Black, dest) <= 1 {
                    out.push(apply(board, |pts, bar, _| {
                        bar[0] -= 1;
                        land_white(pts, bar, dest);
                    }));
                }
                return out;
            }
            let all_home =
                (7..=24).all(|p| board.checkers_on(Side::White, p) == 0);
            for from in 1..=24 {
                if board.checkers_on(Side::White, from) == 0 {
                    continue;
                }
                if from > d {
                    let dest = from - d;
                    if board.checkers_on(Side::Black, dest) <= 1 {
                        out.push(apply(board, |pts, bar, _| {
                            pts[from - 1] -= 1;
                            land_white(pts, bar, dest);
                        }));
                    }
                } else if all_home
                    && (from == d
                        || ((from + 1)..=6)
                            .all(|p| board.checkers_on(Side::White, p) == 0))
                {
                    out.push(apply(board, |pts, _, off| {
                        pts[from - 1] -= 1;
                        off[0] += 1;
                    }));
                }
            }
        }
        Side::Black => {
            if board.bar(Side::Black) > 0 {
                let dest = d;
                if board.checkers_on(Side::White, dest) <= 1 {
                    out.push(apply(board, |pts, bar, _| {
                        bar[1] -= 1;
                        land_black(pts, bar, dest);
                    }));
                }
                return out;
            }
            let all_home =
                (1..=18).all(|p| board.checkers_on(Side::Black, p) == 0);
            for from in 1..=24 {
                if board.checkers_on(Side::Black, from) == 0 {
                    continue;
                }
                let target = from + d;
                if target <= 24 {
                    if board.checkers_on(Side::White, target) <= 1 {
                        out.push(apply(board, |pts, bar, _| {
                            pts[from - 1] += 1;
                            land_black(pts, bar, target);
                        }));
                    }
                } else if all_home
                    && (target == 25
                        || (19..from).all(|p| board.checkers_on(Side::Black, p) == 0))
                {
                    out.push(apply(board, |pts, _, off| {
                        pts[from - 1] += 1;
                        off[1] += 1;
                    }));
                }
            }
        }
    }
    out
}

fn land_white(pts: &mut [i8; 24], bar: &mut [u8; 2], dest: usize) {
    if pts[dest - 1] == -1 {
        pts[dest - 1] = 1;
        bar[1] += 1;
    } else {
        pts[dest - 1] += 1;
    }
}

fn land_black(pts: &mut [i8; 24], bar: &mut [u8; 2], dest: usize) {
    if pts[dest - 1] == 1 {
        pts[dest - 1] = -1;
        bar[0] += 1;
    } else {
        pts[dest - 1] -= 1;
    }
}

fn apply(board: &Board, edit: impl FnOnce(&mut [i8; 24], &mut [u8; 2], &mut [u8; 2])) -> Board {
    let mut points = [0i8; 24];
    for p in 1..=24 {
        points[p - 1] = board.point(p);
    }
    let mut bar = [board.bar(Side::White), board.bar(Side::Black)];
    let mut off = [board.off(Side::White), board.off(Side::Black)];
    edit(&mut points, &mut bar, &mut off);
    Board::new(points, bar, off, board.to_move())
        .expect("reference generator produced an invalid board")
}
