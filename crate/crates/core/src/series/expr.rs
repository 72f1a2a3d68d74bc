//! A small reader for integer polynomials in `x`, `y`, `z`.
//!
//! Grammar: `expr := term (('+' | '-') term)*`, `term := unary ('*' unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' int)?`,
//! `atom := int | x | y | z | '(' expr ')'`.

use num_bigint::BigInt;

use super::{Bounds, TruncatedSeries, Var};
use crate::error::{Error, Result};

/// Evaluates a polynomial expression as a series with the given bounds.
pub fn parse_poly(src: &str, bounds: Bounds) -> Result<TruncatedSeries> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        bounds,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    bounds: Bounds,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::PolyParse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<TruncatedSeries> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TruncatedSeries> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<TruncatedSeries> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<TruncatedSeries> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TruncatedSeries> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let v = match c {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    _ => Var::Z,
                };
                Ok(TruncatedSeries::var(v, self.bounds))
            }
            Some(c) if c.is_ascii_digit() => Ok(TruncatedSeries::constant(self.integer()?, self.bounds)),
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_products_and_powers() {
        let b = Bounds::new(6, 6, 6);
        let p = parse_poly("(1-x)^2 * y - 2*-z", b).unwrap();
        let q = parse_poly("y - 2*x*y + x^2*y + 2*z", b).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn reports_offsets() {
        let b = Bounds::new(2, 2, 2);
        assert!(matches!(
            parse_poly("1 + w", b),
            Err(Error::PolyParse { offset: 4, .. })
        ));
        assert!(matches!(parse_poly("(1 + x", b), Err(Error::PolyParse { .. })));
        assert!(matches!(parse_poly("x y", b), Err(Error::PolyParse { .. })));
    }
}
