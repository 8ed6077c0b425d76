//! Polynomial string grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! Integer literals are mapped into the coefficient ring. Juxtaposition is
//! not multiplication: `2x` is rejected.

use thiserror::Error;

use super::{MultiPoly, Vars};
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses `src` into a polynomial over `ring` in `vars`. If `generator` is
/// given, that identifier denotes the supplied ring element.
pub fn parse_poly<R: Ring>(
    src: &str,
    ring: &R,
    vars: &Vars,
    generator: Option<(&str, R::Elem)>,
) -> Result<MultiPoly<R>, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ring,
        vars,
        generator,
    };
    p.skip_ws();
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a, R: Ring> {
    src: &'a [u8],
    pos: usize,
    ring: &'a R,
    vars: &'a Vars,
    generator: Option<(&'a str, R::Elem)>,
}

impl<R: Ring> Parser<'_, R> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly<R>, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<R>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly<R>, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly<R>, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| ParseError {
            offset: start,
            message: "integer literal out of range".to_string(),
        })
    }

    fn atom(&mut self) -> Result<MultiPoly<R>, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let n = i64::try_from(n).map_err(|_| self.error("integer literal out of range"))?;
                if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(')
                {
                    return Err(self.error("implicit multiplication is not allowed; use '*'"));
                }
                Ok(MultiPoly::constant(
                    self.ring,
                    self.vars,
                    self.ring.from_int(n),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(i) = self.vars.iter().position(|v| v == name) {
                    return Ok(MultiPoly::var(self.ring, self.vars, i));
                }
                if let Some((g, value)) = &self.generator {
                    if *g == name {
                        return Ok(MultiPoly::constant(self.ring, self.vars, value.clone()));
                    }
                }
                Err(ParseError {
                    offset: start,
                    message: format!("unknown identifier '{name}'"),
                })
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;
    use crate::poly::vars;

    #[test]
    fn literals_reduce_mod_p() {
        let f3 = make_prime_field(3).unwrap();
        let v = vars(&["x", "y"]);
        let f = MultiPoly::parse("4*x - (y+1)^2 + 3", &f3, &v).unwrap();
        assert_eq!(f.to_string(), "2*y^2+x+y+2");
    }

    #[test]
    fn malformed_exponent() {
        let f3 = make_prime_field(3).unwrap();
        let v = vars(&["x"]);
        let err = MultiPoly::parse("x^", &f3, &v).unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let f3 = make_prime_field(3).unwrap();
        let v = vars(&["x"]);
        let err = MultiPoly::parse("2x", &f3, &v).unwrap_err();
        assert_eq!(err.offset, 1);
        assert!(MultiPoly::parse("x y", &f3, &v).is_err());
        assert!(MultiPoly::parse("z", &f3, &v).is_err());
        assert!(MultiPoly::parse("(x+1", &f3, &v).is_err());
    }

    #[test]
    fn generator_identifier() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = crate::field::make_extension(&f2, 2).unwrap();
        let v = vars(&["x", "y"]);
        let f = parse_poly("x - a*y", &f4, &v, Some(("a", f4.generator()))).unwrap();
        assert_eq!(f.to_string(), "x+a*y");
        assert!(MultiPoly::parse("x - a*y", &f4, &v).is_err());
    }
}
