//! Position representation and terminal scoring.
//!
//! Points are numbered 1..=24 from White's perspective: White travels from
//! point 24 down to point 1 and bears off past point 1, so White's home board
//! is points 1-6. Black travels the other way and bears off past point 24.
//! White enters from the bar onto points 19-24 (point `25 - die`), Black onto
//! points 1-6 (point `die`).

use thiserror::Error;

pub const CHECKERS_PER_SIDE: u8 = 15;
/// Pip distance of a bar checker (entry consumes the full board length).
pub const BAR_PIPS: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    White,
    Black,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::White => Side::Black,
            Side::Black => Side::White,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::White => 0,
            Side::Black => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::White => 'W',
            Side::Black => 'B',
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum BoardError {
    #[error("{side:?} has {found} checkers (points + bar + off), expected 15")]
    CheckerCount { side: Side, found: i32 },
    #[error("point {point} count {count} out of range [-15, 15]")]
    PointRange { point: usize, count: i16 },
    #[error("borne-off count {found} for {side:?} exceeds 15")]
    OffRange { side: Side, found: u8 },
}

/// Length of [`Board::canonical_key`] in bytes.
pub const CANONICAL_KEY_LEN: usize = 29;

/// A cubeless backgammon position: checker counts per point, bars, borne-off
/// counts, and the side to move.
///
/// `points[i]` holds point `i + 1`; positive counts are White checkers,
/// negative are Black. A point never holds checkers of both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Board {
    pub(crate) points: [i8; 24],
    pub(crate) bar: [u8; 2],
    pub(crate) off: [u8; 2],
    pub(crate) to_move: Side,
}

/// The standard opening position, White to move.
pub const STARTING: Board = Board {
    points: [
        -2, 0, 0, 0, 0, 5, 0, 3, 0, 0, 0, -5, 5, 0, 0, 0, -3, 0, -5, 0, 0, 0, 0, 2,
    ],
    bar: [0, 0],
    off: [0, 0],
    to_move: Side::White,
};

impl Board {
    /// Validated constructor. `points[i]` is point `i + 1`, White-positive.
    pub fn new(
        points: [i8; 24],
        bar: [u8; 2],
        off: [u8; 2],
        to_move: Side,
    ) -> Result<Board, BoardError> {
        for (i, &c) in points.iter().enumerate() {
            if !(-15..=15).contains(&(c as i16)) {
                return Err(BoardError::PointRange {
                    point: i + 1,
                    count: c as i16,
                });
            }
        }
        for side in [Side::White, Side::Black] {
            let i = side.index();
            if off[i] > CHECKERS_PER_SIDE {
                return Err(BoardError::OffRange {
                    side,
                    found: off[i],
                });
            }
            let on_points: i32 = points
                .iter()
                .map(|&c| match side {
                    Side::White => (c.max(0)) as i32,
                    Side::Black => (-c).max(0) as i32,
                })
                .sum();
            let total = on_points + bar[i] as i32 + off[i] as i32;
            if total != CHECKERS_PER_SIDE as i32 {
                return Err(BoardError::CheckerCount { side, found: total });
            }
        }
        Ok(Board {
            points,
            bar,
            off,
            to_move,
        })
    }

    /// Signed count on point `p` (1..=24): positive White, negative Black.
    pub fn point(&self, p: usize) -> i8 {
        self.points[p - 1]
    }

    pub fn checkers_on(&self, side: Side, p: usize) -> u8 {
        let c = self.points[p - 1];
        match side {
            Side::White => c.max(0) as u8,
            Side::Black => (-c).max(0) as u8,
        }
    }

    pub fn bar(&self, side: Side) -> u8 {
        self.bar[side.index()]
    }

    pub fn off(&self, side: Side) -> u8 {
        self.off[side.index()]
    }

    pub fn to_move(&self) -> Side {
        self.to_move
    }

    pub fn with_to_move(mut self, side: Side) -> Board {
        self.to_move = side;
        self
    }

    /// Same checker configuration, turn passed to the opponent (a dance).
    pub fn passed(&self) -> Board {
        self.with_to_move(self.to_move.other())
    }

    /// Swap colors and reflect point numbering. An involution; the starting
    /// position is its own mirror.
    pub fn mirror(&self) -> Board {
        let mut points = [0i8; 24];
        for i in 0..24 {
            points[i] = -self.points[23 - i];
        }
        Board {
            points,
            bar: [self.bar[1], self.bar[0]],
            off: [self.off[1], self.off[0]],
            to_move: self.to_move.other(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.off[0] == CHECKERS_PER_SIDE || self.off[1] == CHECKERS_PER_SIDE
    }

    /// Signed points if the game is over: +v for a White win, -v for Black.
    /// v = 1 normally, 2 for a gammon (loser bore off nothing), 3 for a
    /// backgammon (gammon with a loser checker on the bar or in the winner's
    /// home board).
    pub fn terminal_value(&self) -> Option<i8> {
        if self.off[Side::White.index()] == CHECKERS_PER_SIDE {
            Some(self.win_points(Side::White))
        } else if self.off[Side::Black.index()] == CHECKERS_PER_SIDE {
            Some(-self.win_points(Side::Black))
        } else {
            None
        }
    }

    fn win_points(&self, winner: Side) -> i8 {
        let loser = winner.other();
        if self.off(loser) > 0 {
            return 1;
        }
        let in_winner_home = match winner {
            Side::White => (1..=6).any(|p| self.checkers_on(loser, p) > 0),
            Side::Black => (19..=24).any(|p| self.checkers_on(loser, p) > 0),
        };
        if self.bar(loser) > 0 || in_winner_home {
            3
        } else {
            2
        }
    }

    /// Total pips `side` needs to bear off everything; bar checkers count 25.
    pub fn pip_count(&self, side: Side) -> u32 {
        let mut pips = self.bar(side) as i32 * BAR_PIPS as i32;
        match side {
            Side::White => {
                for (i, &c) in self.points.iter().enumerate() {
                    pips += c.max(0) as i32 * (i as i32 + 1);
                }
            }
            Side::Black => {
                for (i, &c) in self.points.iter().enumerate() {
                    pips += (-c).max(0) as i32 * (24 - i as i32);
                }
            }
        }
        pips as u32
    }

    /// Fixed-width serialization of (points 1..24, bars, offs, to_move) used
    /// for afterstate deduplication and all deterministic tie-breaking.
    pub fn canonical_key(&self) -> [u8; CANONICAL_KEY_LEN] {
        let mut key = [0u8; CANONICAL_KEY_LEN];
        for i in 0..24 {
            key[i] = (self.points[i] + 15) as u8;
        }
        key[24] = self.bar[0];
        key[25] = self.bar[1];
        key[26] = self.off[0];
        key[27] = self.off[1];
        key[28] = self.to_move.index() as u8;
        key
    }

}
