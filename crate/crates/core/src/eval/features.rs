//! Board feature encodings for linear evaluators.
//!
//! Encodings are perspective-canonical: the vector for (board, White) equals
//! the vector for (mirror(board), Black), so one weight vector serves both
//! sides. By convention the vector encodes a position in which `perspective`
//! has just moved (an afterstate).

use crate::backgammon::{shot_rolls, Board, Side, CHECKERS_PER_SIDE};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EncodingError {
    #[error("unknown feature encoding id '{0}'")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    /// Raw board description: 24 point counts per side, bar and off counts,
    /// all normalized by 15. Length 52.
    Raw,
    /// Raw plus per-side summed hit probability over blots. Length 54.
    RawHit,
}

impl Encoding {
    pub fn len(self) -> usize {
        match self {
            Encoding::Raw => 52,
            Encoding::RawHit => 54,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Encoding::Raw => "raw",
            Encoding::RawHit => "raw-hit",
        }
    }

    pub fn parse(id: &str) -> Result<Encoding, EncodingError> {
        match id {
            "raw" => Ok(Encoding::Raw),
            "raw-hit" => Ok(Encoding::RawHit),
            other => Err(EncodingError::Unknown(other.to_string())),
        }
    }
}

/// Feature vector with its encoding id and perspective.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub encoding: Encoding,
    pub perspective: Side,
}

pub fn encode_features(board: &Board, perspective: Side, encoding: Encoding) -> FeatureVector {
    let mut values = vec![0.0; encoding.len()];
    encode_into(board, perspective, encoding, &mut values);
    FeatureVector {
        values,
        encoding,
        perspective,
    }
}

/// Fills `out` (length `encoding.len()`) without allocating.
pub fn encode_into(board: &Board, perspective: Side, encoding: Encoding, out: &mut [f64]) {
    debug_assert_eq!(out.len(), encoding.len());
    let canon = match perspective {
        Side::White => *board,
        Side::Black => board.mirror(),
    };
    let norm = 1.0 / CHECKERS_PER_SIDE as f64;
    for p in 1..=24 {
        out[p - 1] = canon.checkers_on(Side::White, p) as f64 * norm;
        out[24 + p - 1] = canon.checkers_on(Side::Black, p) as f64 * norm;
    }
    out[48] = canon.bar(Side::White) as f64 * norm;
    out[49] = canon.bar(Side::Black) as f64 * norm;
    out[50] = canon.off(Side::White) as f64 * norm;
    out[51] = canon.off(Side::Black) as f64 * norm;
    if encoding == Encoding::RawHit {
        out[52] = hit_exposure(&canon, Side::White);
        out[53] = hit_exposure(&canon, Side::Black);
    }
}

/// Sum of shot_rolls/36 over `side`'s blots: the expected number of this
/// side's checkers hit next turn if the opponent hits whenever possible.
fn hit_exposure(board: &Board, side: Side) -> f64 {
    let mut sum = 0.0;
    for p in 1..=24 {
        if board.checkers_on(side, p) == 1 {
            let shots = shot_rolls(board, p).expect("single checker is a blot");
            sum += shots as f64 / 36.0;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgammon::testutil::board;
    use crate::backgammon::STARTING;

    #[test]
    fn starting_counts_sum_to_one_per_side() {
        let f = encode_features(&STARTING, Side::White, Encoding::Raw);
        let white: f64 = (0..24).map(|i| f.values[i]).sum::<f64>() + f.values[48] + f.values[50];
        let black: f64 =
            (24..48).map(|i| f.values[i]).sum::<f64>() + f.values[49] + f.values[51];
        assert!((white - 1.0).abs() < 1e-12);
        assert!((black - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perspective_canonical_under_mirror() {
        let b = board(&[(25, 1), (13, 4), (6, 5)], &[(3, 1), (19, 7)], Side::White);
        for enc in [Encoding::Raw, Encoding::RawHit] {
            let f_white = encode_features(&b, Side::White, enc);
            let f_black = encode_features(&b.mirror(), Side::Black, enc);
            assert_eq!(f_white.values, f_black.values);
        }
    }

    #[test]
    fn all_white_off_sets_only_off_feature() {
        let b = board(&[], &[(24, 15)], Side::Black);
        let f = encode_features(&b, Side::White, Encoding::Raw);
        assert_eq!(f.values[50], 1.0);
        assert!((0..24).all(|i| f.values[i] == 0.0));
        assert_eq!(f.values[48], 0.0);
    }

    #[test]
    fn hit_features_count_blots() {
        // White blot on 10 with the Black attacker 6 before it on 4; the
        // Black checker is itself a blot 6 in front of the White one.
        let b = board(&[(10, 1)], &[(4, 1)], Side::White);
        let f = encode_features(&b, Side::White, Encoding::RawHit);
        assert!((f.values[52] - 17.0 / 36.0).abs() < 1e-12);
        assert!((f.values[53] - 17.0 / 36.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_encoding_is_named_in_error() {
        assert_eq!(
            Encoding::parse("dense-v2"),
            Err(EncodingError::Unknown("dense-v2".into()))
        );
    }
}
