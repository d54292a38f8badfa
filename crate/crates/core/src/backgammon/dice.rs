//! Dice rolls and the weighted set of distinct outcomes.

use rand::Rng;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiceRoll {
    d1: u8,
    d2: u8,
}

impl DiceRoll {
    /// Panics outside 1..=6; use [`DiceRoll::try_new`] for external input.
    pub fn new(d1: u8, d2: u8) -> DiceRoll {
        DiceRoll::try_new(d1, d2).expect("die out of range 1..=6")
    }

    pub fn try_new(d1: u8, d2: u8) -> Option<DiceRoll> {
        if (1..=6).contains(&d1) && (1..=6).contains(&d2) {
            Some(DiceRoll { d1, d2 })
        } else {
            None
        }
    }

    pub fn sample<R: Rng>(rng: &mut R) -> DiceRoll {
        let d1 = rng.random_range(1..=6);
        let d2 = rng.random_range(1..=6);
        DiceRoll { d1, d2 }
    }

    pub fn d1(&self) -> u8 {
        self.d1
    }

    pub fn d2(&self) -> u8 {
        self.d2
    }

    pub fn is_double(&self) -> bool {
        self.d1 == self.d2
    }

    pub fn high(&self) -> u8 {
        self.d1.max(self.d2)
    }

    pub fn low(&self) -> u8 {
        self.d1.min(self.d2)
    }

    /// Weight of this roll among the 36 ordered outcomes (1 for doubles,
    /// 2 otherwise).
    pub fn weight(&self) -> u32 {
        if self.is_double() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for DiceRoll {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.d1, self.d2)
    }
}

/// The 21 distinct rolls; weights sum to 36.
pub fn distinct_rolls() -> impl Iterator<Item = DiceRoll> {
    (1..=6u8).flat_map(|d1| (d1..=6u8).map(move |d2| DiceRoll { d1, d2 }))
}

/// Standard opening procedure: each side rolls one die, ties are re-rolled,
/// and the winner moves first using the two dice shown.
pub fn opening_roll<R: Rng>(rng: &mut R) -> (super::board::Side, DiceRoll) {
    loop {
        let w = rng.random_range(1..=6);
        let b = rng.random_range(1..=6);
        if w != b {
            let first = if w > b {
                super::board::Side::White
            } else {
                super::board::Side::Black
            };
            return (first, DiceRoll { d1: w, d2: b });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_rolls_cover_36_ordered_outcomes() {
        let rolls: Vec<DiceRoll> = distinct_rolls().collect();
        assert_eq!(rolls.len(), 21);
        assert_eq!(rolls.iter().map(|r| r.weight()).sum::<u32>(), 36);
        assert_eq!(rolls.iter().filter(|r| r.is_double()).count(), 6);
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(DiceRoll::try_new(0, 3), None);
        assert_eq!(DiceRoll::try_new(3, 7), None);
        assert!(DiceRoll::try_new(6, 1).is_some());
    }
}
