//! Legal move generation.
//!
//! Rules implemented: bar entry before any other move, hitting lone blots,
//! bearing off only with all 15 remaining checkers home (exact pips, or a
//! higher die from the highest occupied point), maximal dice usage (both dice
//! must be played if any sequence allows it; when only one can be played the
//! higher must be, if either is individually playable), and up to four moves
//! on doubles. Afterstates are deduplicated by canonical encoding and
//! returned sorted by it; a player with no legal move contributes the
//! unchanged board (a dance) as the single candidate.
//!
//! Generation runs in mover-normalized space: the board is mirrored so the
//! mover is always White, and results are mirrored back. Checker-move
//! notation is therefore always in the mover's own point numbering.

use super::board::{Board, Side};
use super::dice::DiceRoll;
use std::fmt;

/// One checker moved `from` -> `to` in the mover's numbering; 25 is the bar,
/// 0 is off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckerMove {
    pub from: u8,
    pub to: u8,
    pub hit: bool,
}

impl fmt::Display for CheckerMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.from {
            25 => write!(f, "bar")?,
            p => write!(f, "{p}")?,
        }
        match self.to {
            0 => write!(f, "/off")?,
            p => write!(f, "/{p}")?,
        }
        if self.hit {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// The checker moves of one turn, empty for a dance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckerPlay {
    pub steps: Vec<CheckerMove>,
}

impl fmt::Display for CheckerPlay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "(dance)");
        }
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

/// A candidate afterstate together with the play that produced it. The
/// afterstate has the turn already passed to the opponent.
#[derive(Debug, Clone, PartialEq)]
pub struct Move {
    pub afterstate: Board,
    pub play: CheckerPlay,
}

/// All candidate afterstates of `(board, roll)`, pairwise distinct and
/// sorted by canonical encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveSet {
    pub moves: Vec<Move>,
}

impl MoveSet {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn afterstates(&self) -> impl Iterator<Item = &Board> {
        self.moves.iter().map(|m| &m.afterstate)
    }

    /// True when the only candidate is the unchanged board (a dance).
    pub fn is_dance(&self) -> bool {
        self.moves.len() == 1 && self.moves[0].play.steps.is_empty()
    }
}

/// Full move generation with play tracking, for decision roots and display.
pub fn legal_afterstates(board: &Board, roll: DiceRoll) -> MoveSet {
    debug_assert!(!board.is_terminal(), "movegen on a terminal position");
    let mut leaves: Leaves<CheckerPlay> = Leaves::new();
    generate(board, roll, &mut leaves);
    let mut keyed: Vec<([u8; 29], Move)> = leaves
        .items
        .into_iter()
        .map(|(afterstate, play)| (afterstate.canonical_key(), Move { afterstate, play }))
        .collect();
    // Stable sort so the first play found is the one kept for each afterstate.
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    MoveSet {
        moves: keyed.into_iter().map(|(_, m)| m).collect(),
    }
}

/// Afterstates only; the hot path for simulated trials.
pub fn afterstates(board: &Board, roll: DiceRoll) -> Vec<Board> {
    debug_assert!(!board.is_terminal(), "movegen on a terminal position");
    let mut leaves: Leaves<()> = Leaves::new();
    generate(board, roll, &mut leaves);
    let mut keyed: Vec<([u8; 29], Board)> = leaves
        .items
        .into_iter()
        .map(|(b, ())| (b.canonical_key(), b))
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, b)| b).collect()
}

trait PlayStore: Sized {
    fn from_steps(steps: &[CheckerMove]) -> Self;
}

impl PlayStore for () {
    fn from_steps(_: &[CheckerMove]) {}
}

impl PlayStore for CheckerPlay {
    fn from_steps(steps: &[CheckerMove]) -> Self {
        CheckerPlay {
            steps: steps.to_vec(),
        }
    }
}

/// Collects leaves at the maximal sequence depth seen so far.
struct Leaves<P: PlayStore> {
    best_depth: usize,
    items: Vec<(Board, P)>,
}

impl<P: PlayStore> Leaves<P> {
    fn new() -> Self {
        Leaves {
            best_depth: 0,
            items: Vec::with_capacity(64),
        }
    }

    fn record(&mut self, board: &Board, steps: &[CheckerMove]) {
        let depth = steps.len();
        if depth < self.best_depth {
            return;
        }
        if depth > self.best_depth {
            self.best_depth = depth;
            self.items.clear();
        }
        self.items.push((*board, P::from_steps(steps)));
    }
}

fn generate<P: PlayStore>(board: &Board, roll: DiceRoll, leaves: &mut Leaves<P>) {
    // Mover-normalized space: White always moves.
    let mirrored = board.to_move == Side::Black;
    let work = if mirrored { board.mirror() } else { *board };
    let mut stack = [CheckerMove {
        from: 0,
        to: 0,
        hit: false,
    }; 4];

    if roll.is_double() {
        // Same-die moves commute up to source order: any legal sequence can
        // be replayed with non-increasing source points, so restricting the
        // search that way prunes permutations without losing afterstates
        // (cross-checked against the unrestricted reference generator).
        let die = roll.d1();
        explore(&work, occupancy(&work), &[die; 4], 0, 25, &mut stack, leaves);
    } else {
        let (hi, lo) = (roll.high(), roll.low());
        let mut hi_first: Leaves<P> = Leaves::new();
        let mut lo_first: Leaves<P> = Leaves::new();
        let mask = occupancy(&work);
        explore(&work, mask, &[hi, lo], 0, 25, &mut stack, &mut hi_first);
        explore(&work, mask, &[lo, hi], 0, 25, &mut stack, &mut lo_first);
        match hi_first.best_depth.max(lo_first.best_depth) {
            2 => {
                // Both dice playable in some order; only full plays count.
                leaves.best_depth = 2;
                if hi_first.best_depth == 2 {
                    leaves.items.append(&mut hi_first.items);
                }
                if lo_first.best_depth == 2 {
                    leaves.items.append(&mut lo_first.items);
                }
            }
            1 => {
                // Only one die playable: the higher when it has any move.
                *leaves = if hi_first.best_depth == 1 {
                    hi_first
                } else {
                    lo_first
                };
            }
            _ => {
                leaves.record(&work, &[]);
            }
        }
    }

    // Back to the original orientation; the turn passes to the opponent.
    for (b, _) in leaves.items.iter_mut() {
        *b = if mirrored { b.mirror() } else { *b }.passed();
    }
}

/// Depth-first enumeration over one fixed die order. A leaf is reached when
/// the dice run out or the next die has no move; only maximal-depth leaves
/// survive in `leaves`. `max_from` caps source points for the doubles
/// ordering restriction (25 = unrestricted, used for mixed rolls where the
/// two die orders are explored separately).
fn explore<P: PlayStore>(
    board: &Board,
    mask: u32,
    dice: &[u8],
    depth: usize,
    max_from: u8,
    stack: &mut [CheckerMove; 4],
    leaves: &mut Leaves<P>,
) {
    if dice.is_empty() {
        leaves.record(board, &stack[..depth]);
        return;
    }
    let restrict = dice.len() > 1 && dice[1] == dice[0];
    let mut any = false;
    for_each_single_move(board, mask, dice[0], max_from, |next, next_mask, mv| {
        any = true;
        stack[depth] = mv;
        let next_cap = if restrict { mv.from } else { 25 };
        explore(&next, next_mask, &dice[1..], depth + 1, next_cap, stack, leaves);
    });
    if !any {
        leaves.record(board, &stack[..depth]);
    }
}

/// Bit p-1 set iff White has a checker on point p (mover space).
fn occupancy(board: &Board) -> u32 {
    let mut mask = 0u32;
    for p in 1..=24 {
        if board.points[p - 1] > 0 {
            mask |= 1 << (p - 1);
        }
    }
    mask
}

/// Enumerates every legal single-checker move for White (mover space) with
/// `die`, invoking `f` with the resulting board, its occupancy mask, and the
/// move made. Sources above `max_from` are skipped.
fn for_each_single_move<F: FnMut(Board, u32, CheckerMove)>(
    board: &Board,
    mask: u32,
    die: u8,
    max_from: u8,
    mut f: F,
) {
    let die_us = die as usize;

    if board.bar[0] > 0 {
        // Entry is compulsory while any checker sits on the bar.
        let entry = 25 - die_us;
        if board.points[entry - 1] >= -1 {
            let mut next = *board;
            next.bar[0] -= 1;
            let hit = next.points[entry - 1] == -1;
            if hit {
                next.points[entry - 1] = 1;
                next.bar[1] += 1;
            } else {
                next.points[entry - 1] += 1;
            }
            f(
                next,
                mask | (1 << (entry - 1)),
                CheckerMove {
                    from: 25,
                    to: entry as u8,
                    hit,
                },
            );
        }
        return;
    }

    if mask == 0 {
        return; // all checkers already off
    }
    let highest = 32 - mask.leading_zeros() as usize;
    let can_bear_off = highest <= 6;

    let mut rest = if max_from >= 24 {
        mask
    } else {
        mask & ((1u32 << max_from) - 1)
    };
    while rest != 0 {
        let bit = 31 - rest.leading_zeros() as usize;
        rest &= !(1 << bit);
        let p = bit + 1;
        let from_cleared = if board.points[bit] == 1 {
            mask & !(1 << bit)
        } else {
            mask
        };
        if p > die_us {
            let dest = p - die_us;
            if board.points[dest - 1] >= -1 {
                let mut next = *board;
                next.points[bit] -= 1;
                let hit = next.points[dest - 1] == -1;
                if hit {
                    next.points[dest - 1] = 1;
                    next.bar[1] += 1;
                } else {
                    next.points[dest - 1] += 1;
                }
                f(
                    next,
                    from_cleared | (1 << (dest - 1)),
                    CheckerMove {
                        from: p as u8,
                        to: dest as u8,
                        hit,
                    },
                );
            }
        } else if can_bear_off && (p == die_us || p == highest) {
            // Exact pips, or a higher die from the highest occupied point.
            let mut next = *board;
            next.points[bit] -= 1;
            next.off[0] += 1;
            f(
                next,
                from_cleared,
                CheckerMove {
                    from: p as u8,
                    to: 0,
                    hit: false,
                },
            );
        }
    }
}
