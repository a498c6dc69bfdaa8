//! Text forms of arcs.
//!
//! ```text
//! interior   := "[" end "," end "]"        end := ["-"] digits ["*"]
//! peripheral := "p(" s "," k ")"  |  "g(" l "," s "," t ")"
//! ```
//!
//! Whitespace is ignored anywhere. Error positions are 0-based character
//! offsets into the original text.

use std::fmt;

use thiserror::Error;

use crate::interior::{CylEnd, InteriorArc, RawInteriorArc};
use crate::surface::{PeripheralArc, SurfaceError, Tag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("syntax error at position {pos}: expected {expected}, found {}", describe(*.found))]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: Option<char>,
    },
    #[error("number at position {pos} is too large")]
    Overflow { pos: usize },
    #[error("{0}")]
    Surface(#[from] SurfaceError),
    #[error("g(l,s,t) notation needs the number of boundary points")]
    MissingBoundaryCount,
}

fn describe(found: Option<char>) -> String {
    match found {
        Some(c) => format!("'{c}'"),
        None => "end of input".to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsedArc {
    Interior(RawInteriorArc),
    Peripheral(PeripheralArc),
}

/// How peripheral arcs are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    /// `p(s,k)`
    #[default]
    Canonical,
    /// `g(l,s,t)`
    Gamma,
}

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Self {
            chars,
            at: 0,
            len: text.chars().count(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |&(p, _)| p)
    }

    fn error(&self, expected: &'static str) -> NotationError {
        NotationError::Syntax {
            pos: self.pos(),
            expected,
            found: self.peek(),
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), NotationError> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<u64, NotationError> {
        let start = self.pos();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("a digit"));
        }
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(NotationError::Overflow { pos: start })?;
            self.at += 1;
        }
        Ok(value)
    }

    fn small(&mut self) -> Result<u32, NotationError> {
        let start = self.pos();
        let v = self.digits()?;
        u32::try_from(v).map_err(|_| NotationError::Overflow { pos: start })
    }

    fn finish(&self) -> Result<(), NotationError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of input")),
        }
    }

    fn cyl_end(&mut self) -> Result<CylEnd, NotationError> {
        let start = self.pos();
        let negative = self.eat('-');
        let magnitude = self.digits()?;
        let magnitude =
            i64::try_from(magnitude).map_err(|_| NotationError::Overflow { pos: start })?;
        let pos = if negative { -magnitude } else { magnitude };
        let tag = if self.eat('*') {
            Tag::Notched
        } else {
            Tag::Plain
        };
        Ok(CylEnd::new(pos, tag))
    }
}

pub fn parse_interior(text: &str) -> Result<RawInteriorArc, NotationError> {
    let mut c = Cursor::new(text);
    c.expect('[', "'['")?;
    let a = c.cyl_end()?;
    c.expect(',', "','")?;
    let b = c.cyl_end()?;
    c.expect(']', "']'")?;
    c.finish()?;
    Ok(RawInteriorArc::new(a, b))
}

/// Parses `p(s,k)` or, when `m` is known, `g(l,s,t)`.
pub fn parse_peripheral(text: &str, m: Option<u32>) -> Result<PeripheralArc, NotationError> {
    let mut c = Cursor::new(text);
    let arc = match c.peek() {
        Some('p') => {
            c.at += 1;
            c.expect('(', "'('")?;
            let s = c.small()?;
            c.expect(',', "','")?;
            let k = c.small()?;
            c.expect(')', "')'")?;
            c.finish()?;
            PeripheralArc::new(s, k)?
        }
        Some('g') => {
            c.at += 1;
            c.expect('(', "'('")?;
            let l = c.small()?;
            c.expect(',', "','")?;
            let s = c.small()?;
            c.expect(',', "','")?;
            let t = c.small()?;
            c.expect(')', "')'")?;
            c.finish()?;
            let m = m.ok_or(NotationError::MissingBoundaryCount)?;
            PeripheralArc::from_gamma(l, s, t, m)?
        }
        _ => return Err(c.error("'p' or 'g'")),
    };
    if let Some(m) = m {
        arc.validate(m)?;
    }
    Ok(arc)
}

/// Parses any arc, dispatching on the first non-blank character.
pub fn parse_arc(text: &str, m: Option<u32>) -> Result<ParsedArc, NotationError> {
    let c = Cursor::new(text);
    match c.peek() {
        Some('[') => parse_interior(text).map(ParsedArc::Interior),
        Some('p') | Some('g') => parse_peripheral(text, m).map(ParsedArc::Peripheral),
        _ => Err(c.error("'[', 'p' or 'g'")),
    }
}

pub fn format_interior(arc: &InteriorArc) -> String {
    arc.to_string()
}

pub fn format_peripheral(
    arc: &PeripheralArc,
    m: u32,
    notation: Notation,
) -> Result<String, SurfaceError> {
    Ok(match notation {
        Notation::Canonical => {
            arc.validate(m)?;
            arc.to_string()
        }
        Notation::Gamma => arc.to_gamma(m)?.to_string(),
    })
}

impl fmt::Display for ParsedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedArc::Interior(a) => a.fmt(f),
            ParsedArc::Peripheral(a) => a.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_examples() {
        assert_eq!(
            parse_arc("[1,3*]", None),
            Ok(ParsedArc::Interior(RawInteriorArc::new(
                CylEnd::plain(1),
                CylEnd::notched(3)
            )))
        );
        assert_eq!(
            parse_interior(" [ -2* , 5 ] "),
            Ok(RawInteriorArc::new(CylEnd::notched(-2), CylEnd::plain(5)))
        );
        assert_eq!(
            parse_arc("[3,]", None),
            Err(NotationError::Syntax {
                pos: 3,
                expected: "a digit",
                found: Some(']')
            })
        );
        assert!(matches!(
            parse_interior("[1,2"),
            Err(NotationError::Syntax {
                pos: 4,
                found: None,
                ..
            })
        ));
        assert!(matches!(
            parse_interior("[1,2]x"),
            Err(NotationError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_interior("[1**,2]"),
            Err(NotationError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_interior("[99999999999999999999,2]"),
            Err(NotationError::Overflow { pos: 1 })
        ));
    }

    #[test]
    fn peripheral_examples() {
        let p13 = PeripheralArc::new(1, 3).unwrap();
        assert_eq!(
            parse_arc("g(0,1,4)", Some(5)),
            Ok(ParsedArc::Peripheral(p13))
        );
        assert_eq!(parse_arc("p(1,3)", None), Ok(ParsedArc::Peripheral(p13)));
        assert_eq!(
            parse_arc("g(0,1,2)", Some(5)),
            Err(NotationError::Surface(SurfaceError::ForbiddenGamma {
                l: 0,
                s: 1,
                t: 2
            }))
        );
        assert_eq!(
            parse_arc("g(0,1,4)", None),
            Err(NotationError::MissingBoundaryCount)
        );
        assert!(matches!(
            parse_arc("p(1,1)", None),
            Err(NotationError::Surface(SurfaceError::ArcTooShort { k: 1 }))
        ));
        assert!(matches!(
            parse_arc("p(7,2)", Some(5)),
            Err(NotationError::Surface(_))
        ));
        assert!(matches!(
            parse_arc("q(1,2)", None),
            Err(NotationError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_arc("", None),
            Err(NotationError::Syntax {
                pos: 0,
                found: None,
                ..
            })
        ));
    }

    #[test]
    fn formatting() {
        let a = PeripheralArc::new(5, 5).unwrap();
        assert_eq!(
            format_peripheral(&a, 5, Notation::Canonical).unwrap(),
            "p(5,5)"
        );
        assert_eq!(
            format_peripheral(&a, 5, Notation::Gamma).unwrap(),
            "g(1,5,5)"
        );
        assert!(format_peripheral(&a, 4, Notation::Gamma).is_err());
    }

    #[test]
    fn error_messages_are_single_line() {
        let e = parse_arc("[3,]", None).unwrap_err().to_string();
        assert_eq!(e, "syntax error at position 3: expected a digit, found ']'");
    }
}
