//! Canonical position text format.
//!
//! `bg1 <p1> .. <p24> <wbar> <bbar> <woff> <boff> <W|B>` with single spaces
//! and no trailing space. Point counts are signed integers, positive for
//! White, and numbered from White's perspective (White bears off past
//! point 1). Files carry one LF-terminated position per line.

use super::board::{Board, BoardError, Side};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("parse error at char {at}: {what}")]
    Syntax { at: usize, what: String },
    #[error("invalid position: {0}")]
    Invariant(#[from] BoardError),
}

pub fn format_position(board: &Board) -> String {
    let mut s = String::with_capacity(96);
    s.push_str("bg1");
    for p in 1..=24 {
        write!(s, " {}", board.point(p)).unwrap();
    }
    write!(
        s,
        " {} {} {} {} {}",
        board.bar(Side::White),
        board.bar(Side::Black),
        board.off(Side::White),
        board.off(Side::Black),
        board.to_move().letter()
    )
    .unwrap();
    s
}

pub fn parse_position(text: &str) -> Result<Board, ParseError> {
    let mut cursor = Cursor::new(text);
    let magic = cursor.token("format tag")?;
    if magic.1 != "bg1" {
        return Err(ParseError::Syntax {
            at: magic.0,
            what: format!("expected format tag 'bg1', found '{}'", magic.1),
        });
    }
    let mut points = [0i8; 24];
    for point in points.iter_mut() {
        *point = cursor.int("point count", -15, 15)? as i8;
    }
    let bar = [
        cursor.int("white bar count", 0, 15)? as u8,
        cursor.int("black bar count", 0, 15)? as u8,
    ];
    let off = [
        cursor.int("white off count", 0, 15)? as u8,
        cursor.int("black off count", 0, 15)? as u8,
    ];
    let (at, side) = cursor.token("side to move")?;
    let to_move = match side {
        "W" => Side::White,
        "B" => Side::Black,
        other => {
            return Err(ParseError::Syntax {
                at,
                what: format!("expected side to move 'W' or 'B', found '{other}'"),
            })
        }
    };
    cursor.end()?;
    Ok(Board::new(points, bar, off, to_move)?)
}

/// Token scanner that tracks character offsets for error reporting. The
/// format is strict: fields are separated by exactly one space.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    first: bool,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text,
            pos: 0,
            first: true,
        }
    }

    fn token(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        if !self.first {
            match self.text[self.pos..].chars().next() {
                Some(' ') => self.pos += 1,
                _ => {
                    return Err(ParseError::Syntax {
                        at: self.pos,
                        what: format!("expected single space before {what}"),
                    })
                }
            }
        }
        self.first = false;
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(' ').unwrap_or(rest.len());
        if len == 0 {
            return Err(ParseError::Syntax {
                at: start,
                what: format!("expected {what}"),
            });
        }
        self.pos = start + len;
        Ok((start, &rest[..len]))
    }

    fn int(&mut self, what: &str, min: i32, max: i32) -> Result<i32, ParseError> {
        let (at, tok) = self.token(what)?;
        let value: i32 = tok.parse().map_err(|_| ParseError::Syntax {
            at,
            what: format!("expected integer for {what}, found '{tok}'"),
        })?;
        if value < min || value > max {
            return Err(ParseError::Syntax {
                at,
                what: format!("{what} {value} outside [{min}, {max}]"),
            });
        }
        Ok(value)
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.pos != self.text.len() {
            return Err(ParseError::Syntax {
                at: self.pos,
                what: "trailing input after position".to_string(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgammon::STARTING;

    const STARTING_TEXT: &str =
        "bg1 -2 0 0 0 0 5 0 3 0 0 0 -5 5 0 0 0 -3 0 -5 0 0 0 0 2 0 0 0 0 W";

    #[test]
    fn starting_position_canonical_string() {
        assert_eq!(format_position(&STARTING), STARTING_TEXT);
        assert_eq!(parse_position(STARTING_TEXT), Ok(STARTING));
    }

    #[test]
    fn sixteen_checkers_rejected_as_invariant_violation() {
        let text = "bg1 -2 0 0 0 0 5 0 3 0 0 0 -5 5 0 0 0 -3 0 -5 0 0 0 0 3 0 0 0 0 W";
        match parse_position(text) {
            Err(ParseError::Invariant(BoardError::CheckerCount { found: 16, .. })) => {}
            other => panic!("expected invariant violation, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_character_position() {
        match parse_position("bg1 -2 x") {
            Err(ParseError::Syntax { at: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_position("bg2 0") {
            Err(ParseError::Syntax { at: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        // Double space violates the single-space rule.
        match parse_position("bg1  -2") {
            Err(ParseError::Syntax { at: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        // Trailing space is rejected.
        let trailing = format!("{} ", format_position(&STARTING));
        assert!(matches!(
            parse_position(&trailing),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn bad_side_letter_rejected() {
        let text = STARTING_TEXT.replace(" W", " X");
        assert!(matches!(
            parse_position(&text),
            Err(ParseError::Syntax { what, .. }) if what.contains('X')
        ));
    }
}
