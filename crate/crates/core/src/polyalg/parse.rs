//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Poly;
use super::var::VarSet;
use super::Rational;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, vars: &Arc<VarSet>) -> Result<Poly> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, vars };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarSet>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'-') => return Err(Error::NegativeExponent { position: self.pos }),
                Some(c) if c.is_ascii_digit() => {}
                _ => return Err(self.syntax("expected a nonnegative integer exponent")),
            }
            let start = self.pos;
            let digits = self.digits();
            let exp: u32 = digits
                .parse()
                .map_err(|_| Error::Syntax { position: start, message: "exponent too large".into() })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer: BigInt = self.digits().parse().expect("digit run");
                let mut value = Rational::from_integer(numer.clone());
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                        return Err(self.syntax("expected a denominator"));
                    }
                    let at = self.pos;
                    let denom: BigInt = self.digits().parse().expect("digit run");
                    if denom.is_zero() {
                        return Err(Error::Syntax { position: at, message: "zero denominator".into() });
                    }
                    value = Rational::new(numer, denom);
                }
                Ok(Poly::constant(self.vars, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match self.vars.index_of(name) {
                    Some(i) => Ok(Poly::monomial(self.vars, Monomial::var(i), Rational::from_integer(1.into()))),
                    None => Err(Error::UnknownVariable { name: name.to_string(), position: start }),
                }
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}
