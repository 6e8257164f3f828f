//! Text input and output: polynomial expressions and digit expansions.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! poly  := term (('+' | '-') term)*
//! term  := '-'? uint? ('*'? 'x' ('^' uint)?)?     at least one of uint or x
//! ```
//!
//! The first term may carry a leading sign. Like terms are combined.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unexpected character `{0}`")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable `{0}`; only `x` is supported")]
    UnknownVariable(char),
    #[error("coefficients must be integers")]
    NonIntegerCoefficient,
    #[error("expected a nonnegative integer exponent")]
    ExpectedExponent,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("expected a term")]
    ExpectedTerm,
}

/// A syntax error with the 0-based character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at column {}", .position + 1)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

/// Normalization notes collected while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// `count` terms of degree `degree` were summed.
    CombinedTerms { degree: usize, count: usize },
    /// A signed coefficient followed a binary operator, as in `x + -3`.
    SignFolded { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySource {
    pub raw: String,
    pub poly: Poly,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn parse_poly(s: &str) -> std::result::Result<Poly, ParseError> {
    parse_source(s).map(|src| src.poly)
}

pub fn parse_source(s: &str) -> std::result::Result<PolySource, ParseError> {
    let mut parser = Parser {
        chars: s.char_indices().peekable(),
        len: s.chars().count(),
        byte_to_char: s.char_indices().map(|(b, _)| b).collect(),
        diagnostics: Vec::new(),
    };
    let terms = parser.poly()?;

    let mut by_degree: BTreeMap<usize, (BigInt, usize)> = BTreeMap::new();
    for (coeff, degree) in terms {
        let slot = by_degree.entry(degree).or_default();
        slot.0 += coeff;
        slot.1 += 1;
    }
    let mut diagnostics = parser.diagnostics;
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (degree, (coeff, count)) in by_degree {
        if count > 1 {
            diagnostics.push(Diagnostic::CombinedTerms { degree, count });
        }
        coeffs[degree] = coeff;
    }
    Ok(PolySource {
        raw: s.to_owned(),
        poly: Poly::new(coeffs),
        diagnostics,
    })
}

struct Parser<'a> {
    chars: Peekable<CharIndices<'a>>,
    len: usize,
    byte_to_char: Vec<usize>,
    diagnostics: Vec<Diagnostic>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    /// Character offset of the next token (or the end of input).
    fn pos(&mut self) -> usize {
        self.skip_ws();
        match self.chars.peek() {
            Some(&(b, _)) => self.byte_to_char.binary_search(&b).unwrap_or(b),
            None => self.len,
        }
    }

    fn err<T>(&mut self, kind: ParseErrorKind) -> std::result::Result<T, ParseError> {
        let position = self.pos();
        Err(ParseError { kind, position })
    }

    fn unexpected<T>(&mut self) -> std::result::Result<T, ParseError> {
        match self.peek() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(c) if c == '.' || c == '/' => self.err(ParseErrorKind::NonIntegerCoefficient),
            Some(c) if c.is_alphabetic() => self.err(ParseErrorKind::UnknownVariable(c)),
            Some(c) => self.err(ParseErrorKind::Unexpected(c)),
        }
    }

    fn poly(&mut self) -> std::result::Result<Vec<(BigInt, usize)>, ParseError> {
        if self.peek().is_none() {
            return self.err(ParseErrorKind::Empty);
        }
        let mut terms = vec![self.term(false)?];
        loop {
            let negate = match self.peek() {
                None => return Ok(terms),
                Some('+') => false,
                Some('-') => true,
                Some(_) => return self.unexpected(),
            };
            self.chars.next();
            let (coeff, degree) = self.term(true)?;
            terms.push((if negate { -coeff } else { coeff }, degree));
        }
    }

    fn term(&mut self, after_operator: bool) -> std::result::Result<(BigInt, usize), ParseError> {
        let start = self.pos();
        let mut sign = BigInt::one();
        if self.peek() == Some('-') {
            self.chars.next();
            sign = -sign;
            if after_operator {
                self.diagnostics
                    .push(Diagnostic::SignFolded { position: start });
            }
        }
        let coeff = self.uint()?;
        if matches!(self.peek(), Some('.') | Some('/')) {
            return self.err(ParseErrorKind::NonIntegerCoefficient);
        }
        let star = if coeff.is_some() && self.peek() == Some('*') {
            self.chars.next();
            true
        } else {
            false
        };
        let degree = match self.peek() {
            Some('x') => {
                self.chars.next();
                if self.peek() == Some('^') {
                    self.chars.next();
                    let exp_pos = self.pos();
                    let exp = self.uint()?.ok_or(ParseError {
                        kind: ParseErrorKind::ExpectedExponent,
                        position: exp_pos,
                    })?;
                    usize::try_from(exp)
                        .ok()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or(ParseError {
                            kind: ParseErrorKind::ExponentTooLarge,
                            position: exp_pos,
                        })?
                } else {
                    1
                }
            }
            _ if star => return self.unexpected(),
            _ if coeff.is_none() => {
                return match self.peek() {
                    Some(c) if c.is_alphabetic() => self.unexpected(),
                    Some('+') | Some('-') | Some('*') | Some('^') | None => {
                        self.err(ParseErrorKind::ExpectedTerm)
                    }
                    _ => self.unexpected(),
                }
            }
            _ => 0,
        };
        let coeff = coeff.map(BigInt::from).unwrap_or_else(BigInt::one);
        Ok((sign * coeff, degree))
    }

    fn uint(&mut self) -> std::result::Result<Option<BigUint>, ParseError> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.chars.next();
        }
        Ok(Some(digits.parse().expect("ascii digits")))
    }
}

/// How digit expansions are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigitStyle {
    /// `[3, 1, 2]`, least significant first.
    LsdList,
    /// `3 + 1·7 + 2·7^2`.
    Series,
    /// `3 + 1*7 + 2*7^2`.
    SeriesAscii,
}

impl FromStr for DigitStyle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lsd" | "lsd_list" | "list" => Ok(DigitStyle::LsdList),
            "series" => Ok(DigitStyle::Series),
            "series_ascii" | "ascii" => Ok(DigitStyle::SeriesAscii),
            _ => Err(format!("unknown digit style `{s}`")),
        }
    }
}

impl fmt::Display for DigitStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DigitStyle::LsdList => "lsd_list",
            DigitStyle::Series => "series",
            DigitStyle::SeriesAscii => "series_ascii",
        })
    }
}

/// Renders base-`p` digits (least significant first). Zero digits are
/// omitted from series output; an all-zero expansion prints as `0`.
pub fn render_digits(digits: &[BigUint], p: &BigUint, style: DigitStyle) -> Result<String> {
    if let Some(d) = digits.iter().find(|d| *d >= p) {
        return Err(Error::DigitOutOfRange {
            digit: d.clone(),
            p: p.clone(),
        });
    }
    let dot = match style {
        DigitStyle::LsdList => {
            let items: Vec<String> = digits.iter().map(ToString::to_string).collect();
            return Ok(format!("[{}]", items.join(", ")));
        }
        DigitStyle::Series => "·",
        DigitStyle::SeriesAscii => "*",
    };
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| match i {
            0 => d.to_string(),
            1 => format!("{d}{dot}{p}"),
            _ => format!("{d}{dot}{p}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        return Ok("0".to_owned());
    }
    Ok(terms.join(" + "))
}
