//! Recursive-descent parser for polynomial expressions over named
//! coordinates.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | name | '(' expr ')'
//! ```

use isotropy_core::algebra::Rational;
use isotropy_core::Polynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.col0 + at + 1, message: msg.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos] as char;
            let start = self.pos;
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c.is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                out.push((Tok::Num(s.parse().expect("digits")), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                while self.pos < self.src.len() && {
                    let d = self.src[self.pos] as char;
                    d.is_ascii_alphanumeric() || d == '_'
                } {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                out.push((Tok::Name(s.to_string()), start));
            } else if "+-*/^()".contains(c) {
                out.push((Tok::Op(c), start));
                self.pos += 1;
            } else {
                return Err(self.err(start, format!("unexpected character '{c}'")));
            }
        }
        out.push((Tok::End, self.src.len()));
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    names: &'a [String],
    line: usize,
    col0: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.col0 + at + 1, message: msg.into() }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn at(&self) -> usize {
        self.toks[self.i].1
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.i += 1;
                    acc = acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.i += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.i += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.i += 1;
                    let at = self.at();
                    let d = self.unary()?;
                    let Some(c) = d.constant_value() else {
                        return Err(self.err(at, "non-constant divisor"));
                    };
                    if c.is_zero() {
                        return Err(self.err(at, "division by zero"));
                    }
                    acc = acc.scale(&(Rational::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == &Tok::Op('-') {
            self.i += 1;
            let v = self.unary()?;
            return Ok(v.scale(&-Rational::one()));
        }
        if self.peek() == &Tok::Op('+') {
            self.i += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.i += 1;
        let at = self.at();
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.err(at, "exponent must be a non-negative integer"));
        };
        self.i += 1;
        let e: u32 = n.try_into().map_err(|_| self.err(at, "exponent too large"))?;
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.at();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.i += 1;
                Ok(Polynomial::constant(Rational::from_integer(n)))
            }
            Tok::Name(s) => {
                self.i += 1;
                match self.names.iter().position(|n| *n == s) {
                    Some(k) => Ok(Polynomial::var(k)),
                    None => Err(self.err(at, format!("unknown coordinate '{s}'"))),
                }
            }
            Tok::Op('(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return Err(self.err(self.at(), "expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Tok::End => Err(self.err(at, "unexpected end of expression")),
            Tok::Op(c) => Err(self.err(at, format!("unexpected '{c}'"))),
        }
    }
}

/// Parse `src`, reporting positions as `line` and `col0 + offset + 1`.
pub fn parse_polynomial_at(src: &str, names: &[String], line: usize, col0: usize) -> Result<Polynomial, ParseError> {
    let toks = Lexer { src: src.as_bytes(), pos: 0, line, col0 }.tokens()?;
    let mut p = Parser { toks, i: 0, names, line, col0 };
    let v = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.err(p.at(), "unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    parse_polynomial_at(src, names, 1, 0)
}

/// Canonical text of a polynomial.
pub fn print_polynomial(p: &Polynomial, names: &[String]) -> String {
    p.to_string_with(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_terms() {
        let n = names(&["x1", "x2"]);
        let p = parse_polynomial("x1*x2 + 3/2", &n).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(print_polynomial(&p, &n), "x1*x2 + 3/2");
    }

    #[test]
    fn cancellation() {
        let n = names(&["x1"]);
        assert!(parse_polynomial("x1^2 - x1^2", &n).unwrap().is_zero());
    }

    #[test]
    fn non_constant_divisor() {
        let n = names(&["x", "y"]);
        let e = parse_polynomial("y/x", &n).unwrap_err();
        assert_eq!(e.message, "non-constant divisor");
        assert_eq!((e.line, e.column), (1, 3));
    }

    #[test]
    fn unknown_name_position() {
        let n = names(&["x"]);
        let e = parse_polynomial_at("x + w", &n, 4, 10).unwrap_err();
        assert_eq!((e.line, e.column), (4, 15));
    }

    #[test]
    fn precedence() {
        let n = names(&["x", "y"]);
        let a = parse_polynomial("-x^2*(y - 1) + 2*y", &n).unwrap();
        let b = parse_polynomial("2*y + x^2 - x^2*y", &n).unwrap();
        assert_eq!(a, b);
    }
}
