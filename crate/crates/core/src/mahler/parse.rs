//! Recursive-descent parser for Laurent polynomials in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | factor
//! factor := base ('^' signed-int)?
//! base   := integer | 'x' | 'X' | 'y' | 'Y' | '(' expr ')'
//! ```
//!
//! Division is accepted only by a monomial, so `1/x` is `x^-1`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{LaurentPoly2, MAX_EXPONENT};
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn syntax<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { offset, message: message.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly2> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly2> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                acc.checked_mul(&rhs)?
            } else {
                match acc.checked_div(&rhs) {
                    Err(Error::Unsupported(_)) => return syntax(at, "division is only by a monomial"),
                    Err(Error::ZeroPolynomial) => return syntax(at, "division by zero"),
                    r => r?,
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly2> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly2> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        let e = self.signed_int()?;
        match base.checked_pow(e) {
            Err(Error::Unsupported(_)) => syntax(at, "negative power of a non-monomial"),
            r => r,
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = self.digits();
        if digits.is_empty() {
            return syntax(self.pos, "expected an integer exponent");
        }
        let mag = digits.parse::<i64>().unwrap_or(i64::MAX);
        let e = if neg { -mag } else { mag };
        if mag > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(e));
        }
        Ok(e)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn base(&mut self) -> Result<LaurentPoly2> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'x' | b'X') => {
                self.pos += 1;
                Ok(LaurentPoly2::x())
            }
            Some(b'y' | b'Y') => {
                self.pos += 1;
                Ok(LaurentPoly2::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return syntax(self.pos, "expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                Ok(LaurentPoly2::constant(BigRational::from_integer(n)))
            }
            Some(c) => syntax(at, format!("unexpected `{}`", c as char)),
            None => syntax(at, "unexpected end of input"),
        }
    }
}

/// Parses and expands a polynomial; offsets in errors are byte offsets into `text`.
pub fn parse_poly(text: &str) -> Result<LaurentPoly2> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return syntax(p.pos, format!("unexpected `{}`", c as char));
    }
    Ok(out)
}
