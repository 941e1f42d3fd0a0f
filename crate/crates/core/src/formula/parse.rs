//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := 'X' unary | 'G' unary | primary ['U' unary]
//! primary := ident | '!' ident | 'true' | weight | '(' formula ')'
//! ```
//!
//! `&` and `|` associate to the left, `U` to the right. `X`, `G`, `U`, `true`
//! and `inf` are reserved words.

use thiserror::Error;

use super::Formula;
use crate::monoid::{Monoid, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown atomic proposition `{name}` at {pos}")]
    UnknownAtom { pos: usize, name: String },
    #[error("bad weight at {pos}: {source}")]
    Weight {
        pos: usize,
        #[source]
        source: WeightError,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Weight(String),
    True,
    X,
    G,
    U,
    Not,
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Weight(s) => format!("`{s}`"),
            Tok::True => "`true`".into(),
            Tok::X => "`X`".into(),
            Tok::G => "`G`".into(),
            Tok::U => "`U`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let is_ident_start = |b: u8| b.is_ascii_alphabetic() || b == b'_';
    let is_ident = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    let is_num = |b: u8| b.is_ascii_digit() || b == b'/' || b == b'.';
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'&' => out.push((start, Tok::And)),
            b'|' => out.push((start, Tok::Or)),
            b'!' => out.push((start, Tok::Not)),
            b'-' | b'+' | b'0'..=b'9' => {
                i += 1;
                if c == b'-' || c == b'+' {
                    if text[i..].starts_with("inf") && !bytes.get(i + 3).is_some_and(|&b| is_ident(b))
                    {
                        i += 3;
                        out.push((start, Tok::Weight(text[start..i].to_string())));
                        continue;
                    }
                    if !bytes.get(i).is_some_and(|b| b.is_ascii_digit()) {
                        return Err(ParseError::Syntax {
                            pos: start,
                            msg: format!("expected a number after `{}`", c as char),
                        });
                    }
                }
                while i < bytes.len() && is_num(bytes[i]) {
                    i += 1;
                }
                out.push((start, Tok::Weight(text[start..i].to_string())));
                continue;
            }
            b if is_ident_start(b) => {
                while i < bytes.len() && is_ident(bytes[i]) {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "X" => Tok::X,
                    "G" => Tok::G,
                    "U" => Tok::U,
                    "true" => Tok::True,
                    "inf" => Tok::Weight(word.to_string()),
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ap: &'a [String],
    monoid: Monoid,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: format!("expected {wanted}, found {}", self.peek().describe()),
        })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conj()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::X => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::G => {
                self.bump();
                Ok(Formula::always(self.unary()?))
            }
            _ => {
                let lhs = self.primary()?;
                if *self.peek() == Tok::U {
                    self.bump();
                    let rhs = self.unary()?;
                    return Ok(Formula::until(lhs, rhs));
                }
                Ok(lhs)
            }
        }
    }

    fn atom_name(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if !self.ap.contains(&name) {
                    return Err(ParseError::UnknownAtom { pos, name });
                }
                Ok(name)
            }
            _ => self.unexpected("an atomic proposition"),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(_) => Ok(Formula::Atom(self.atom_name()?)),
            Tok::Not => {
                self.bump();
                Ok(Formula::NegAtom(self.atom_name()?))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::tt(self.monoid))
            }
            Tok::Weight(lit) => {
                self.bump();
                let k = self
                    .monoid
                    .parse_weight(&lit)
                    .map_err(|source| ParseError::Weight { pos, source })?;
                Ok(Formula::Const(k))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return self.unexpected("`)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.unexpected("a formula"),
        }
    }
}

/// Parses `text` over the propositions `ap`, reading weight literals in `monoid`.
pub fn parse(text: &str, ap: &[String], monoid: Monoid) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        ap,
        monoid,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.unexpected("end of input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Weight;

    fn ap() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Formula {
        parse(s, &ap(), Monoid::Tropical).unwrap()
    }

    fn k(n: i64) -> Formula {
        Formula::Const(Weight::int(n))
    }

    #[test]
    fn basic_shapes() {
        let (a, b, c) = (Formula::atom("a"), Formula::atom("b"), Formula::atom("c"));
        assert_eq!(p("a | b"), Formula::or(a.clone(), b.clone()));
        assert_eq!(p("G(a & 2)"), Formula::always(Formula::and(a.clone(), k(2))));
        assert_eq!(
            p("((a & 2) | (b & 3)) U (X c)"),
            Formula::until(
                Formula::or(Formula::and(a.clone(), k(2)), Formula::and(b.clone(), k(3))),
                Formula::next(c.clone())
            )
        );
        assert_eq!(p("true"), Formula::Const(Weight::int(0)));
        assert_eq!(p("!a"), Formula::neg_atom("a"));
    }

    #[test]
    fn associativity_and_precedence() {
        let (a, b, c) = (Formula::atom("a"), Formula::atom("b"), Formula::atom("c"));
        assert_eq!(
            p("a & b & c"),
            Formula::and(Formula::and(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(
            p("a | b & c"),
            Formula::or(a.clone(), Formula::and(b.clone(), c.clone()))
        );
        assert_eq!(
            p("a U b U c"),
            Formula::until(a.clone(), Formula::until(b.clone(), c.clone()))
        );
        assert_eq!(p("X a U b"), Formula::next(Formula::until(a.clone(), b.clone())));
        assert_eq!(p("G G a"), Formula::always(Formula::always(a)));
    }

    #[test]
    fn weights() {
        assert_eq!(p("3/2"), Formula::Const(Weight::ratio(3, 2)));
        assert_eq!(p("inf"), Formula::Const(Weight::PosInf));
        let l = parse("-inf & -3", &ap(), Monoid::Liminf).unwrap();
        assert_eq!(
            l,
            Formula::and(Formula::Const(Weight::NegInf), Formula::Const(Weight::int(-3)))
        );
        assert_eq!(
            parse("true", &ap(), Monoid::Liminf).unwrap(),
            Formula::Const(Weight::PosInf)
        );
    }

    #[test]
    fn errors() {
        let err = |s: &str| parse(s, &ap(), Monoid::Tropical).unwrap_err();
        assert!(matches!(err("a |"), ParseError::Syntax { pos: 3, .. }));
        assert!(matches!(err("(a"), ParseError::Syntax { .. }));
        assert!(matches!(err("a b"), ParseError::Syntax { pos: 2, .. }));
        assert!(matches!(err("a # b"), ParseError::Syntax { pos: 2, .. }));
        assert!(matches!(err("d"), ParseError::UnknownAtom { pos: 0, .. }));
        assert!(matches!(err("!X"), ParseError::Syntax { .. }));
        assert!(matches!(err("-2"), ParseError::Weight { .. }));
        assert!(matches!(err("1/0"), ParseError::Weight { .. }));
    }

    #[test]
    fn printed_text_reparses() {
        for s in ["a | b", "G(a & 2)", "((a & 2) | (b & 3)) U (X c)", "X X !a", "(a U b) & c"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f);
            assert_eq!(p(&f.pretty(Monoid::Tropical).to_string()), f);
        }
    }
}
