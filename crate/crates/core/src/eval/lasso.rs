//! Ultimately periodic words `u v^ω`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::automata::letter_mask;

pub type Letter = BTreeSet<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<Letter>,
    period: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("the period of a lasso word must not be empty")]
    EmptyPeriod,
    #[error("proposition `{0}` is not in the alphabet")]
    UnknownProp(String),
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, period: Vec<Letter>) -> Result<Self, LassoError> {
        if period.is_empty() {
            return Err(LassoError::EmptyPeriod);
        }
        Ok(LassoWord { stem, period })
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Number of distinct suffix positions, `|u| + |v|`.
    pub fn len(&self) -> usize {
        self.stem.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at position `i < len()`.
    pub fn letter(&self, i: usize) -> &Letter {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.period[i - self.stem.len()]
        }
    }

    /// Position of the suffix after `i`, wrapping from the end to the period start.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    /// Letters as bitmasks over `ap`, by position.
    pub fn masks(&self, ap: &[String]) -> Result<Vec<u32>, LassoError> {
        (0..self.len())
            .map(|i| {
                let l = self.letter(i);
                letter_mask(ap, l.iter().map(String::as_str)).ok_or_else(|| {
                    let bad = l.iter().find(|a| !ap.contains(a)).cloned();
                    LassoError::UnknownProp(bad.unwrap_or_default())
                })
            })
            .collect()
    }

    /// The same word with the first period letter moved into the stem.
    pub fn unroll(&self) -> LassoWord {
        let mut stem = self.stem.clone();
        stem.push(self.period[0].clone());
        let mut period = self.period[1..].to_vec();
        period.push(self.period[0].clone());
        LassoWord { stem, period }
    }
}

fn fmt_letter(l: &Letter, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let items: Vec<&str> = l.iter().map(String::as_str).collect();
    write!(f, "{{{}}}", items.join(","))
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.stem {
            fmt_letter(l, f)?;
        }
        f.write_str("(")?;
        for l in &self.period {
            fmt_letter(l, f)?;
        }
        f.write_str(")^w")
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> LassoError {
        LassoError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), LassoError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn letter(&mut self) -> Result<Letter, LassoError> {
        self.expect(b'{')?;
        let mut out = Letter::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a proposition"));
            }
            out.insert(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned());
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected `,` or `}`")),
            }
        }
    }
}

impl FromStr for LassoWord {
    type Err = LassoError;

    /// `{a,b}{a}({b}{})^w`: stem letters, then the period in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor {
            s: s.as_bytes(),
            pos: 0,
        };
        let mut stem = Vec::new();
        while c.peek() == Some(b'{') {
            stem.push(c.letter()?);
        }
        c.expect(b'(')?;
        let mut period = Vec::new();
        while c.peek() == Some(b'{') {
            period.push(c.letter()?);
        }
        c.expect(b')')?;
        c.expect(b'^')?;
        c.expect(b'w')?;
        if c.peek().is_some() {
            return Err(c.err("trailing input"));
        }
        LassoWord::new(stem, period)
    }
}
