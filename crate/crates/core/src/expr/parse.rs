//! Text front-end for [`PosRatExpr`].
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' int)?
//! base   := var | posint | '(' expr ')'
//! ```
//!
//! Rational literals are written as quotients of integers (`3/4`). The
//! printer emits the same grammar, so `parse(print(e))` is `e` again up to
//! rational-function equality.

use std::fmt;

use num::bigint::BigInt;
use num::Zero;

use crate::rational::Rational;

use super::poly::{Exponents, LaurentPoly};
use super::ratexpr::PosRatExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    NonPositiveLiteral,
    Subtraction,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub pos: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at {}: {msg}", self.pos),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable `{v}` at {}", self.pos)
            }
            ParseErrorKind::NonPositiveLiteral => {
                write!(f, "non-positive literal at {}", self.pos)
            }
            ParseErrorKind::Subtraction => write!(
                f,
                "subtraction or unary minus at {} is not allowed in a positive expression",
                self.pos
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
        } else if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
                pos: start,
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            pos: self.pos(),
        }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.to_string()))
    }

    fn expr(&mut self) -> Result<PosRatExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => return Err(self.err(ParseErrorKind::Subtraction)),
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PosRatExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    acc = acc.div(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PosRatExpr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(n), pos) => {
                let k: i32 = n.try_into().map_err(|_| ParseError {
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                    pos,
                })?;
                Ok(base.pow(k))
            }
            (Tok::Minus, pos) => Err(ParseError {
                kind: ParseErrorKind::Subtraction,
                pos,
            }),
            (_, pos) => Err(ParseError {
                kind: ParseErrorKind::Syntax("expected integer exponent after `^`".into()),
                pos,
            }),
        }
    }

    fn base(&mut self) -> Result<PosRatExpr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                if n.is_zero() {
                    return Err(ParseError {
                        kind: ParseErrorKind::NonPositiveLiteral,
                        pos,
                    });
                }
                Ok(PosRatExpr::constant(Rational::from_big(n, BigInt::from(1)))
                    .expect("positive literal"))
            }
            Tok::Ident(name) => {
                if self.vars.contains(&name.as_str()) {
                    Ok(PosRatExpr::var(&name))
                } else {
                    Err(ParseError {
                        kind: ParseErrorKind::UnknownVariable(name),
                        pos,
                    })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.syntax("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => Err(ParseError {
                kind: ParseErrorKind::Subtraction,
                pos,
            }),
            Tok::End => Err(ParseError {
                kind: ParseErrorKind::Syntax("unexpected end of input".into()),
                pos,
            }),
            other => Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("unexpected token {other:?}")),
                pos,
            }),
        }
    }
}

/// Parses `text` into canonical form. Every identifier must be listed in
/// `variables`.
pub fn parse_expr(text: &str, variables: &[&str]) -> Result<PosRatExpr, ParseError> {
    let toks = tokenize(text)?;
    // A `-` anywhere is a positivity violation, reported before syntax.
    if let Some((_, pos)) = toks.iter().find(|(t, _)| *t == Tok::Minus) {
        return Err(ParseError {
            kind: ParseErrorKind::Subtraction,
            pos: *pos,
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        vars: variables,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.syntax("trailing input"));
    }
    Ok(e)
}

fn print_monomial(coeff: &Rational, exps: &Exponents) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !coeff.is_one() || exps.is_one() {
        factors.push(coeff.to_string());
    }
    for (name, e) in exps.iter() {
        if e == 1 {
            factors.push(name.to_string());
        } else if e > 0 {
            factors.push(format!("{name}^{e}"));
        } else {
            factors.push(format!("1/{name}^{}", -e));
        }
    }
    factors.join("*")
}

pub(crate) fn print_laurent(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms()
        .map(|(e, c)| print_monomial(c, e))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Deterministic printing in the parser's grammar.
pub fn print_expr(e: &PosRatExpr) -> String {
    let num = e.numerator().as_laurent();
    let den = e.denominator().as_laurent();
    let num_s = print_laurent(num);
    if den.is_one() {
        return num_s;
    }
    let num_s = if num.len() > 1 { format!("({num_s})") } else { num_s };
    let den_s = print_laurent(den);
    let bare_den = den.len() == 1 && {
        let (exps, c) = den.terms().next().expect("nonempty");
        c.is_one() && exps.iter().count() == 1
    };
    if bare_den {
        format!("{num_s}/{den_s}")
    } else {
        format!("{num_s}/({den_s})")
    }
}
