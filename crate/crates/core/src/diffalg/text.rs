//! Text form of differential polynomials.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ['^' INT]
//! primary := INT ['/' INT] | '(' expr ')' | PARAM | 'x' | 't' | 'u' | 'u[' INT ',' INT ']'
//! PARAM   := 'a' | 'lambda' | 'alpha' | 'mu' | 'beta' | 'c'
//! ```
//!
//! `u[i,j]` is u differentiated i times in x and j times in t. The printer
//! emits terms in canonical monomial order joined by `" + "`; a coefficient
//! that is a single parameter monomial is written as a product prefix with
//! non-unit rationals parenthesised when negative or fractional, e.g.
//! `(-1/3)*alpha*u^3 + mu*u[2,0]`. A multi-term coefficient is written in
//! parentheses, e.g. `(a + (-1)*c)*u[1,0]`. Printing then parsing returns the
//! same polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::diffpoly::DiffPoly;
use super::jet::JetVar;
use super::param::{Param, ParamPoly};
use crate::error::{Error, Result};
use crate::poly::{fmt_monomial, fmt_rational};

pub(crate) fn write_diffpoly(f: &mut fmt::Formatter<'_>, p: &DiffPoly) -> fmt::Result {
    write_with_names(f, p, |v| v.to_string())
}

/// Prints with a custom rendering of jet variables (e.g. `U^(k)` for reduced ODEs).
pub fn write_with_names(
    f: &mut fmt::Formatter<'_>,
    p: &DiffPoly,
    name: impl Fn(JetVar) -> String,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in p.terms() {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        let mut parts: Vec<String> = Vec::new();
        if c.len() == 1 {
            let (e, r) = c.terms().next().unwrap();
            let names = fmt_monomial::<super::param::ParamAlphabet>(e);
            if !r.is_one() || (names.is_empty() && m.is_one()) {
                parts.push(fmt_rational(r));
            }
            parts.extend(names);
        } else {
            parts.push(format!("({c})"));
        }
        for &(v, e) in m.factors() {
            if e == 1 {
                parts.push(name(v));
            } else {
                parts.push(format!("{}^{e}", name(v)));
            }
        }
        f.write_str(&parts.join("*"))?;
    }
    Ok(())
}

pub fn parse_diffpoly(src: &str) -> Result<DiffPoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl std::str::FromStr for DiffPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_diffpoly(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", ch as char)))
        }
    }

    fn expr(&mut self) -> Result<DiffPoly> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffPoly> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let n = self.integer()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small(&mut self) -> Result<u8> {
        let n = self.integer()?;
        n.try_into().map_err(|_| self.err("derivative count out of range"))
    }

    fn primary(&mut self) -> Result<DiffPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let value = if self.eat(b'/') {
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(n)
                };
                Ok(DiffPoly::rational(value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match word {
                    "x" => Ok(DiffPoly::x()),
                    "t" => Ok(DiffPoly::t()),
                    "u" => {
                        if self.src.get(self.pos) == Some(&b'[') {
                            self.pos += 1;
                            let nx = self.small()?;
                            self.expect(b',')?;
                            let nt = self.small()?;
                            self.expect(b']')?;
                            let v = JetVar::deriv(nx, nt);
                            if v.order() > super::jet::MAX_JET_ORDER {
                                return Err(self.err("jet order exceeds bound"));
                            }
                            Ok(DiffPoly::var(v))
                        } else {
                            Ok(DiffPoly::u())
                        }
                    }
                    other => match Param::from_name(other) {
                        Some(p) => Ok(DiffPoly::constant(super::param::param(p))),
                        None => {
                            self.pos = start;
                            Err(self.err(&format!("unknown symbol '{other}'")))
                        }
                    },
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parses a pure parameter polynomial such as `a + (-1)*c`.
pub fn parse_param_poly(src: &str) -> Result<ParamPoly> {
    let p = parse_diffpoly(src)?;
    if p.jet_vars().is_empty() {
        Ok(p.coefficient(&super::jet::Monomial::one()))
    } else {
        Err(Error::Parse {
            pos: 0,
            msg: "jet variable in parameter expression".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn prints_documented_example() {
        let p = &(&DiffPoly::param(Param::Alpha) * &DiffPoly::u().pow(3)).scale_rational(&rat(-1, 3))
            + &(&DiffPoly::param(Param::Mu) * &DiffPoly::u_deriv(2, 0));
        assert_eq!(p.to_string(), "(-1/3)*alpha*u^3 + mu*u[2,0]");
        assert_eq!(parse_diffpoly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn multi_term_coefficients_are_parenthesised() {
        let p = parse_diffpoly("(a - c)*u[1,0] + 3").unwrap();
        assert_eq!(p.to_string(), "3 + (a + (-1)*c)*u[1,0]");
        assert_eq!(parse_diffpoly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn parser_expands_products() {
        let p = parse_diffpoly("(u + 1)^2 - u^2 - 2*u").unwrap();
        assert_eq!(p, DiffPoly::one());
        assert_eq!(parse_diffpoly("0").unwrap(), DiffPoly::zero());
        assert_eq!(DiffPoly::zero().to_string(), "0");
        assert_eq!(parse_diffpoly("-1").unwrap().to_string(), "(-1)");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_diffpoly("u +").is_err());
        assert!(parse_diffpoly("q*u").is_err());
        assert!(parse_diffpoly("u[11,0]").is_err());
        assert!(parse_diffpoly("1/0").is_err());
        assert!(parse_diffpoly("(u").is_err());
    }
}
