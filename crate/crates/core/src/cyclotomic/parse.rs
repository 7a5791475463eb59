//! Text syntax: sums of terms `c*E(n)^k`, e.g. `-3/2*E(5)^2+E(5)`.
//!
//! ```text
//! expr    := [sign] term (sign term)*
//! term    := factor ('*' factor)*
//! factor  := rational | 'E(' uint ')' ['^' ['-'] uint]
//! rational:= uint ['/' uint]
//! ```
//! Whitespace is allowed between tokens.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Cyclotomic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseCyclotomicError {
    /// 1-based character position inside the value string.
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseCyclotomicError> {
        Err(ParseCyclotomicError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseCyclotomicError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseCyclotomicError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small_uint(&mut self) -> Result<u64, ParseCyclotomicError> {
        let at = self.pos;
        let v = self.uint()?;
        u64::try_from(v).map_err(|_| ParseCyclotomicError {
            column: at + 1,
            message: "number too large".into(),
        })
    }

    /// One factor as `(conductor, exponent, coefficient)`.
    fn factor(&mut self) -> Result<(u64, i64, BigRational), ParseCyclotomicError> {
        match self.peek() {
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.small_uint()?;
                if n == 0 {
                    return self.err("E(0) is undefined");
                }
                self.expect(b')')?;
                let mut k: i64 = 1;
                if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let v = self.small_uint()? as i64;
                    k = if neg { -v } else { v };
                }
                Ok((n, k, BigRational::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut q = BigRational::from_integer(num);
                if self.eat(b'/') {
                    let den = self.uint()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    q /= BigRational::from_integer(den);
                }
                Ok((1, 0, q))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of value"),
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, ParseCyclotomicError> {
        let mut acc = Cyclotomic::one();
        loop {
            let (n, k, c) = self.factor()?;
            let f = Cyclotomic::from_terms(n, [(k, c)]);
            acc = &acc * &f;
            if !self.eat(b'*') {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, ParseCyclotomicError> {
        let mut acc = Cyclotomic::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None if !first => return Ok(acc),
                _ if first => false,
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
                None => unreachable!(),
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
    }
}

impl FromStr for Cyclotomic {
    type Err = ParseCyclotomicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            s: s.as_bytes(),
            pos: 0,
        };
        if cur.peek().is_none() {
            return cur.err("empty value");
        }
        cur.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_gap_style_values() {
        let a: Cyclotomic = "E(5)+E(5)^4".parse().unwrap();
        let b: Cyclotomic = "-E(5)^2-E(5)^3-1".parse().unwrap();
        assert_eq!(a, b);
        let c: Cyclotomic = " -3/2*E(5)^2 + E(5) ".parse().unwrap();
        assert_eq!(c.to_string(), "E(5)-3/2*E(5)^2");
        let d: Cyclotomic = "E(7)^-1".parse().unwrap();
        assert_eq!(d, Cyclotomic::root_of_unity(7, 6));
        let e: Cyclotomic = "2*E(3)*E(4)".parse().unwrap();
        assert_eq!(e.conductor(), 12);
        assert_eq!("7/2".parse::<Cyclotomic>().unwrap().to_string(), "7/2");
    }

    #[test]
    fn reports_error_columns() {
        let err = "1+E(5".parse::<Cyclotomic>().unwrap_err();
        assert_eq!(err.column, 6);
        let err = "1++2".parse::<Cyclotomic>().unwrap_err();
        assert_eq!(err.column, 3);
        assert!("".parse::<Cyclotomic>().is_err());
        assert!("E(0)".parse::<Cyclotomic>().is_err());
        assert!("3/0".parse::<Cyclotomic>().is_err());
        assert!("x".parse::<Cyclotomic>().is_err());
    }
}
