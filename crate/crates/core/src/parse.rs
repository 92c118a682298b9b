//! Text syntax for polynomials: identifiers for variables, `^` for integer
//! powers, explicit `*`, `+`/`-`, integer (or `p/q`) coefficients, optional
//! parentheses. Whitespace is insignificant.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Parses a polynomial expression in the given ring.
pub fn parse(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let mut p = Parser::new(text, ring);
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

/// Canonical text form: terms in the ring's descending order, explicit `*`,
/// `^` powers, coefficients rendered in the base field.
pub fn format(poly: &Polynomial) -> String {
    let ring = poly.ring();
    let field = ring.field();
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in poly.terms().iter().enumerate() {
        let neg = t.coeff.render_is_negative(field);
        let rendered = t.coeff.render(field);
        let magnitude = rendered.strip_prefix('-').unwrap_or(&rendered);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str("-");
        } else {
            out.push('+');
        }
        let mut factors: Vec<String> = Vec::new();
        if magnitude != "1" || t.mon.is_one() {
            factors.push(magnitude.to_string());
        }
        for (v, &e) in t.mon.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.var_name(v).to_string()),
                _ => {
                    let mut s = ring.var_name(v).to_string();
                    let _ = write!(s, "^{e}");
                    factors.push(s);
                }
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ring: &'a PolyRing) -> Parser<'a> {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ring,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                self.term()?.neg()
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let exp = self.integer_literal()?;
            if exp < 0 {
                return Err(self.error("negative exponent"));
            }
            let mut acc = Polynomial::one(self.ring);
            for _ in 0..exp {
                acc = acc.mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.identifier();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(self.error(format!("unknown variable '{name}'"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer_literal(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let digits = self.digits()?;
        let n: i64 = digits
            .parse()
            .map_err(|_| self.error("integer literal out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn number(&mut self) -> Result<Polynomial> {
        let numer = self.digits()?;
        // A '/' directly after an integer continues a rational literal.
        let denom = if self.peek() == Some('/') {
            self.bump();
            Some(self.digits()?)
        } else {
            None
        };
        let coeff = self.coeff_from_digits(&numer, denom.as_deref())?;
        Ok(Polynomial::term(
            self.ring,
            coeff,
            Monomial::one(self.ring.nvars()),
        ))
    }

    fn coeff_from_digits(&self, numer: &str, denom: Option<&str>) -> Result<Coeff> {
        let field = self.ring.field();
        match field {
            FieldSpec::Rationals => {
                let n: BigInt = numer.parse().unwrap();
                let d: BigInt = match denom {
                    Some(d) => d.parse().unwrap(),
                    None => BigInt::from(1),
                };
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                Ok(Coeff::Rat(Box::new(BigRational::new(n, d))))
            }
            FieldSpec::Prime(p) => {
                let p = *p as u64;
                let fold = |s: &str| s.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                let n = fold(numer);
                match denom {
                    None => Ok(Coeff::Fp(n)),
                    Some(d) => {
                        let d = fold(d);
                        if d == 0 {
                            return Err(self.error("zero denominator"));
                        }
                        Ok(field.div(&Coeff::Fp(n), &Coeff::Fp(d)))
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::grevlex(&["x", "y", "a", "b", "c"], FieldSpec::Prime(32003)).unwrap()
    }

    #[test]
    fn parses_the_basics() {
        let r = ring();
        let f = parse("x^2*a+x*y*b+y^2*c", &r).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(f.total_degree(), Some(3));
        assert!(parse("0", &r).unwrap().is_zero());
    }

    #[test]
    fn canonical_variable_order() {
        let r = ring();
        assert_eq!(format(&parse("y*x", &r).unwrap()), "x*y");
        assert_eq!(format(&parse("x - x", &r).unwrap()), "0");
        assert_eq!(format(&parse("-x + 2*y - 3", &r).unwrap()), "-x+2*y-3");
    }

    #[test]
    fn roundtrip() {
        let r = ring();
        for src in [
            "x^3",
            "x^2*a+x*y*b+y^2*c",
            "x^2-y^2",
            "31999*x+b",
            "(a-b)*(a+b)",
        ] {
            let f = parse(src, &r).unwrap();
            let g = parse(&format(&f), &r).unwrap();
            assert_eq!(f, g, "roundtrip failed for {src}");
        }
    }

    #[test]
    fn errors_carry_position() {
        let r = ring();
        match parse("x + q", &r) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 6);
                assert!(msg.contains("q"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("x +", &r).is_err());
        assert!(parse("x ^ -2", &r).is_err());
        assert!(parse("x y", &r).is_err());
    }

    #[test]
    fn rational_coefficients() {
        let r = PolyRing::grevlex(&["x"], FieldSpec::Rationals).unwrap();
        let f = parse("1/2*x + 1/2*x", &r).unwrap();
        assert_eq!(format(&f), "x");
    }
}
