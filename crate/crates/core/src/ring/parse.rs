//! Recursive-descent parser for ring expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are the generator names plus `p`; `a/b` is only a rational
//! literal, there is no division operator.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Generator, RingClass};
use crate::coef::{CoefPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownIdentifier(String),
    ZeroDenominator,
    BadExponent(String),
}

/// A parse failure at a 0-based character position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "syntax error: unexpected character '{c}'")?
            }
            ParseErrorKind::UnexpectedToken(t) => write!(f, "syntax error: unexpected '{t}'")?,
            ParseErrorKind::UnexpectedEnd => write!(f, "syntax error: unexpected end of input")?,
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier '{id}'")?,
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator in rational literal")?,
            ParseErrorKind::BadExponent(e) => {
                write!(f, "exponent must be a non-negative integer, got '{e}'")?
            }
        }
        write!(f, " at position {}", self.position)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => r.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn err(kind: ParseErrorKind, position: usize) -> ParseError {
    ParseError { kind, position }
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' | '−' => out.push((Tok::Minus, start)),
            '*' | '·' => out.push((Tok::Star, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            _ if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
                let mut value = Rational::from_integer(num);
                let mut j = i;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '/' {
                    j += 1;
                    while j < chars.len() && chars[j].is_whitespace() {
                        j += 1;
                    }
                    let ds = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if ds == j {
                        return Err(match chars.get(ds) {
                            Some(ch) => err(ParseErrorKind::UnexpectedChar(*ch), ds),
                            None => err(ParseErrorKind::UnexpectedEnd, ds),
                        });
                    }
                    let den: BigInt = chars[ds..j].iter().collect::<String>().parse().unwrap();
                    if den.is_zero() {
                        return Err(err(ParseErrorKind::ZeroDenominator, ds));
                    }
                    value /= Rational::from_integer(den);
                    i = j;
                }
                out.push((Tok::Num(value), start));
                continue;
            }
            _ if c.is_alphabetic() => {
                while i < chars.len() && is_ident_continue(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            _ => return Err(err(ParseErrorKind::UnexpectedChar(c), start)),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    p_value: &'a CoefPoly,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, at)| *at)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, at)) => err(ParseErrorKind::UnexpectedToken(t.describe()), *at),
            None => err(ParseErrorKind::UnexpectedEnd, self.end),
        }
    }

    fn expr(&mut self) -> Result<RingClass, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingClass, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingClass, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingClass, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            let exp = match self.toks.get(self.pos) {
                Some((Tok::Num(r), _)) if r.is_integer() => r
                    .to_integer()
                    .try_into()
                    .map_err(|_| err(ParseErrorKind::BadExponent(r.to_string()), at))?,
                Some((t, _)) => return Err(err(ParseErrorKind::BadExponent(t.describe()), at)),
                None => return Err(err(ParseErrorKind::UnexpectedEnd, at)),
            };
            self.pos += 1;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RingClass, ParseError> {
        let Some((tok, at)) = self.toks.get(self.pos).cloned() else {
            return Err(self.unexpected());
        };
        match tok {
            Tok::Num(r) => {
                self.pos += 1;
                Ok(RingClass::scalar(CoefPoly::constant(r)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if name == "p" {
                    return Ok(RingClass::scalar(self.p_value.clone()));
                }
                Generator::from_name(&name)
                    .map(RingClass::generator)
                    .ok_or_else(|| err(ParseErrorKind::UnknownIdentifier(name), at))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `text` with `p` as the formal indeterminate.
pub fn parse_class(text: &str) -> Result<RingClass, ParseError> {
    parse_class_with(text, &CoefPoly::p())
}

/// Parses `text`, reading the identifier `p` as `p_value`.
pub fn parse_class_with(text: &str, p_value: &CoefPoly) -> Result<RingClass, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        p_value,
    };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.unexpected());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coef::rat;
    use crate::ring::Generator::*;

    fn g(x: Generator) -> RingClass {
        RingClass::generator(x)
    }

    #[test]
    fn relation_examples() {
        let want = (&g(Theta) * &g(F)).scale_rational(&rat(-2, 1));
        assert_eq!(parse_class("xi1^2").unwrap(), want);
        assert_eq!(
            parse_class("(H^2 - alpha*H)").unwrap(),
            g(Alpha).pow(2).scale_rational(&rat(-1, 2))
        );
        assert!(parse_class("0").unwrap().is_zero());
        assert!(parse_class("H^4").unwrap().is_zero());
    }

    #[test]
    fn scalars_and_literals() {
        let x = parse_class("2/3 * p^3 - 2/3*p").unwrap();
        let p = CoefPoly::p();
        let want = (&p.pow(3) - &p).scale(&rat(2, 3));
        assert_eq!(x, RingClass::scalar(want));
        let at3 = parse_class_with("2/3 * p^3 - 2/3*p", &CoefPoly::from_int(3)).unwrap();
        assert_eq!(at3, RingClass::scalar(CoefPoly::from_int(16)));
        assert_eq!(parse_class("-  -alpha").unwrap(), g(Alpha));
        assert_eq!(parse_class("-alpha^2").unwrap(), -g(Alpha).pow(2));
        assert_eq!(parse_class("Θ·α").unwrap(), &g(Theta) * &g(Alpha));
    }

    #[test]
    fn canonical_text_round_trips() {
        let x = parse_class("(p^2-1)*alpha^3*H*Theta^2 + 1/12*p*alpha^2*H - Lambda^2*Theta - 7")
            .unwrap();
        assert_eq!(parse_class(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_class("alpha + beta").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("beta".into()));
        assert_eq!(e.position, 8);
        let e = parse_class("alpha + ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_class("(alpha").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_class("alpha $").unwrap_err();
        assert_eq!(
            (e.kind, e.position),
            (ParseErrorKind::UnexpectedChar('$'), 6)
        );
        let e = parse_class("1/0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroDenominator);
        let e = parse_class("H^alpha").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadExponent(_)));
        let e = parse_class("alpha alpha").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.to_string().contains("position 6"));
    }
}
