//! Text grammar for field elements and polynomials.
//!
//! Elements of prime fields are decimal integers; in extension fields they are
//! polynomials in `g`, the residue of the modulus variable. Polynomials in `T`
//! are sums of `c*T^k` terms. The parser accepts general `+ - * ^ ( )`
//! expressions over `T`, `g` and integers so that everything the printer
//! emits reads back to the identical value.

use std::fmt;

use thiserror::Error;

use crate::finite_field::{FieldElement, FqField};
use crate::polyring::{Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl fmt::Display) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.to_string(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: PolyRing,
    allow_t: bool,
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

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let r = self.ring.clone();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                r.neg(&self.term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = r.add(&acc, &self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = r.sub(&acc, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = self.ring.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.number()?;
            let e = u64::try_from(e).or_else(|_| err(start, "exponent too large"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u128, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<u128>()
            .or_else(|_| err(start, "number too large"))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'T') => {
                if !self.allow_t {
                    return err(self.pos, "'T' is not allowed in a field element");
                }
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'g') => {
                let Some(g) = self.ring.field().generator() else {
                    return err(self.pos, "'g' is only defined in extension fields");
                };
                self.pos += 1;
                Ok(Poly::constant(g))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.field().characteristic() as u128;
                let v = self.number()?;
                Ok(Poly::constant(self.ring.field().from_int((v % p) as i64)))
            }
            Some(c) => err(self.pos, format!("unexpected character '{}'", c as char)),
            None => err(pos.max(self.pos), "unexpected end of input"),
        }
    }
}

fn run(field: &FqField, s: &str, allow_t: bool) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        ring: PolyRing::new(field.clone()),
        allow_t,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(v)
}

pub fn parse_poly(field: &FqField, s: &str) -> Result<Poly, ParseError> {
    run(field, s, true)
}

pub fn parse_element(field: &FqField, s: &str) -> Result<FieldElement, ParseError> {
    let v = run(field, s, false)?;
    Ok(v.coeff(0))
}

pub fn format_poly(field: &FqField, a: &Poly) -> String {
    if a.is_constant() {
        return field.format_element(a.coeff(0));
    }
    let mut terms = Vec::new();
    for (k, &c) in a.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mut ct = field.format_element(c);
        if ct.contains('+') {
            ct = format!("({ct})");
        }
        let mono = match k {
            0 => String::new(),
            1 => "T".to_string(),
            _ => format!("T^{k}"),
        };
        terms.push(if k == 0 {
            ct
        } else if c.is_one() {
            mono
        } else {
            format!("{ct}*{mono}")
        });
    }
    terms.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_general_expressions() {
        let f = FqField::with_order(5).unwrap();
        let r = PolyRing::new(f.clone());
        let a = parse_poly(&f, "(T+1)*(T-1)").unwrap();
        assert_eq!(format_poly(&f, &a), "T^2+4");
        assert_eq!(format_poly(&f, &parse_poly(&f, "-T^2 + 7").unwrap()), "4*T^2+2");
        assert_eq!(parse_poly(&f, "0").unwrap(), Poly::zero());
        assert_eq!(r.format(&parse_poly(&f, "T^3+T^2").unwrap()), "T^3+T^2");
    }

    #[test]
    fn extension_coefficients_are_parenthesised() {
        let f = FqField::with_order(9).unwrap();
        let a = parse_poly(&f, "(g+1)*T^2 + 2*g*T + g + 2").unwrap();
        let s = format_poly(&f, &a);
        assert_eq!(s, "(g+1)*T^2+2*g*T+(g+2)");
        assert_eq!(parse_poly(&f, &s).unwrap(), a);
        assert_eq!(format_poly(&f, &parse_poly(&f, "g+2").unwrap()), "g+2");
    }

    #[test]
    fn errors_carry_positions() {
        let f = FqField::with_order(5).unwrap();
        let e = parse_poly(&f, "T + * 3").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_poly(&f, "T + g").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_poly(&f, "(T+1").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_element(&f, "T").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse_poly(&f, "T 3").unwrap_err();
        assert_eq!(e.message, "trailing input");
        assert!(parse_poly(&f, "").is_err());
    }
}
