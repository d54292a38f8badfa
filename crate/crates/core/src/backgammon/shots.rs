//! Hit-shot enumeration: with how many of the 36 ordered rolls can the
//! attacker hit a given blot?
//!
//! Counts direct shots (one die) and combination shots whose intermediate
//! landing point is not blocked (held by two or more defender checkers);
//! doubles are followed up to four moves, i.e. distance 24. Attacker
//! checkers on the bar participate at their entry distance. Beyond that
//! blocking rule the attacker's own constraints (entering first, maximal
//! dice usage) are deliberately ignored; this is a feature approximation,
//! not a legality check.

use super::board::{Board, Side};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ShotError {
    #[error("point {point} holds {found} defender checkers, not a blot")]
    NotABlot { point: usize, found: u8 },
}

/// Number of ordered rolls (0..=36) with which the owner of `blot_point`'s
/// opponent can hit the lone checker there.
pub fn shot_rolls(board: &Board, blot_point: usize) -> Result<u32, ShotError> {
    let c = board.point(blot_point);
    if c.abs() != 1 {
        return Err(ShotError::NotABlot {
            point: blot_point,
            found: c.unsigned_abs(),
        });
    }
    let defender = if c > 0 { Side::White } else { Side::Black };
    let attacker = defender.other();

    // attacker_at[d]: attacker has a checker exactly d pips before the blot,
    // in the attacker's direction of travel. The bar counts at its entry
    // distance. open[d]: the point d pips before the blot can be landed on.
    let mut attacker_at = [false; 26];
    let mut open = [false; 26];
    for d in 1..=24usize {
        let p = match attacker {
            Side::White => blot_point + d,
            Side::Black => blot_point.wrapping_sub(d),
        };
        if (1..=24).contains(&p) {
            attacker_at[d] = board.checkers_on(attacker, p) > 0;
            open[d] = board.checkers_on(defender, p) < 2;
        }
    }
    let bar_distance = match attacker {
        Side::White => 25 - blot_point,
        Side::Black => blot_point,
    };
    if board.bar(attacker) > 0 {
        attacker_at[bar_distance] = true;
    }

    let mut count = 0;
    for roll in super::dice::distinct_rolls() {
        let hits = if roll.is_double() {
            let d = roll.d1() as usize;
            (1..=4).any(|k| {
                attacker_at[k * d] && (1..k).all(|j| open[k * d - j * d])
            })
        } else {
            let (a, b) = (roll.d1() as usize, roll.d2() as usize);
            attacker_at[a]
                || attacker_at[b]
                || (attacker_at[a + b] && (open[a] || open[b]))
        };
        if hits {
            count += roll.weight();
        }
    }
    Ok(count)
}
