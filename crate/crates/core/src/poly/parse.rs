//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ['^' uint]
//! base   := rational | variable | '(' expr ')'
//! ```
//!
//! Rational literals are `3` or `-7/2` (the slash binds only to adjacent
//! integer literals); there is no division operator and no floats.

use num_bigint::BigInt;
use num_traits::One;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let start = self.pos;
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                    out.push((start, Tok::Plus));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((start, Tok::Minus));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((start, Tok::Star));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((start, Tok::Caret));
                }
                b'/' => {
                    self.pos += 1;
                    out.push((start, Tok::Slash));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((start, Tok::LParen));
                }
                b')' => {
                    self.pos += 1;
                    out.push((start, Tok::RParen));
                }
                b'0'..=b'9' => {
                    let mut end = self.pos;
                    while end < self.src.len() && self.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                    out.push((start, Tok::Int(text.parse().unwrap())));
                    self.pos = end;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut end = self.pos;
                    while end < self.src.len()
                        && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                    {
                        end += 1;
                    }
                    let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                    out.push((start, Tok::Ident(text.to_string())));
                    self.pos = end;
                }
                _ => {
                    return Err(Error::Parse {
                        position: start,
                        message: format!("unexpected character {:?}", c as char),
                    })
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    vars: &'a [&'a str],
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.len, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                neg = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    if n < BigInt::one() {
                        return self.err("exponent must be a positive integer");
                    }
                    let n: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse {
                            position: self.pos(),
                            message: "exponent too large".into(),
                        })?;
                    return Ok(base.pow(n));
                }
                _ => return self.err("expected integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let arity = self.vars.len();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // Rational literal: integer optionally followed by '/' integer.
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return self.err("zero denominator");
                            }
                            Ok(Polynomial::constant(arity, Rational::new(n, d)))
                        }
                        _ => self.err("expected integer denominator after '/'"),
                    }
                } else {
                    Ok(Polynomial::constant(arity, Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(arity, i)),
                None => Err(Error::Parse {
                    position: self.pos(),
                    message: format!("unknown variable `{name}`"),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => self.err("expected ')'"),
                }
            }
            Some(Tok::Minus) => {
                // Unary minus inside a factor, e.g. `(-3)` or `x*-2` is not
                // part of the grammar; only a parenthesized or leading sign is.
                self.err("unexpected '-'")
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` over the ordered variable set `vars` (at most three names).
pub fn parse(text: &str, vars: &[&str]) -> Result<Polynomial> {
    if vars.is_empty() || vars.len() > 3 {
        return Err(Error::Arity {
            expected: 3,
            got: vars.len(),
        });
    }
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokens()?;
    let mut parser = Parser {
        toks,
        idx: 0,
        vars,
        len: text.len(),
    };
    let p = parser.expr()?;
    if parser.idx != parser.toks.len() {
        return parser.err("trailing input");
    }
    // An empty input parses as nothing above only if expr failed, so p is set.
    if vars.len() != p.arity() {
        unreachable!("parser arity bookkeeping");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Exponents;

    #[test]
    fn literal_term_list() {
        let f = parse("x^2 + y^3", &["x", "y"]).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Exponents::new(&[2, 0])), super::super::rat(1));
        assert_eq!(f.coeff(&Exponents::new(&[0, 3])), super::super::rat(1));
    }

    #[test]
    fn division_rejected() {
        // Slash only glues two integer literals; dividing by a monomial is a
        // syntax error.
        assert!(parse("z^6*(x/z^3)^2", &["x", "y", "z"]).is_err());
        assert!(parse("x / 2", &["x", "y"]).is_err());
        // Literal fractions are fine.
        assert!(parse("-7/2*z^6", &["x", "y", "z"]).is_ok());
        assert!(parse("x*1/2", &["x", "y"]).is_ok());
    }

    #[test]
    fn unknown_variable_and_position() {
        let err = parse("x + w", &["x", "y"]).unwrap_err();
        match err {
            crate::Error::Parse { message, .. } => assert!(message.contains("w")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn roundtrip_print_parse() {
        let f = parse("x^2*y - 7/2*z^6 + 1/3", &["x", "y", "z"]).unwrap();
        let printed = f.to_string();
        let g = parse(&printed, &["x", "y", "z"]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn zero_exponent_rejected() {
        assert!(parse("x^0", &["x", "y"]).is_err());
    }
}
