//! Text grammar shared by polynomials and cyclotomic numbers.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | var | 'z_' int | '(' expr ')'
//! ```
//!
//! `z_n` denotes a primitive n-th root of unity; it is accepted whenever
//! `n` divides the conductor of the target field.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Monomial, Poly, Ring};
use crate::arith::{CycloField, CycloNumber, FieldTag, Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { column: i + 1, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: Ring,
    field: &'a Arc<CycloField>,
}

type P = Poly<CycloNumber>;

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let column = self.toks.get(self.pos).map_or(self.end, |(c, _)| *c) + 1;
        Err(Error::Parse { column, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, q: Rational) -> P {
        Poly::constant(self.ring, CycloNumber::from_rational(self.field, q))
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn small_exponent(&mut self) -> Result<u32> {
        let v = self.int()?;
        match u32::try_from(&v) {
            Ok(e) if e <= u16::MAX as u32 => Ok(e),
            _ => self.err("exponent too large"),
        }
    }

    fn factor(&mut self) -> Result<P> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.small_exponent()?;
            base.pow(e)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<P> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let num = self.int()?;
                let q = if self.eat('/') {
                    let den = self.int()?;
                    if den == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    Rational::from(num).to_big() / Rational::from(den).to_big()
                } else {
                    Rational::from(num).to_big()
                };
                Ok(self.constant(Rational::from_big(q)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.ring.vars().iter().position(|v| *v == name) {
                    return Ok(Poly::monomial(self.ring, Monomial::var(i, 1), CycloNumber::one(self.field)));
                }
                if let Some(k) = name.strip_prefix("z_").and_then(|k| k.parse::<u32>().ok()) {
                    let n = self.field.conductor();
                    if k == 0 || !n.is_multiple_of(k) {
                        self.pos -= 1;
                        return self.err(format!("root of unity {name} not in field {}", self.ring.field()));
                    }
                    let z = CycloNumber::root_power(self.field, (n / k) as i64);
                    return Ok(Poly::constant(self.ring, z));
                }
                self.pos -= 1;
                self.err(format!("unknown identifier {name:?}"))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

fn parse_in(s: &str, ring: Ring, field: &Arc<CycloField>) -> Result<P> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse { column: 1, message: "empty expression".into() });
    }
    let work = ring.with_field(FieldTag::Cyclotomic(field.conductor()));
    let mut p = Parser { toks, pos: 0, end: s.chars().count(), ring: work, field };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a polynomial in `ring`.
pub fn parse_poly<C: Scalar>(s: &str, ring: Ring) -> Result<Poly<C>> {
    let field = match ring.field() {
        FieldTag::Rational => CycloField::new(1)?,
        FieldTag::Cyclotomic(n) => CycloField::new(n)?,
    };
    let p = parse_in(s, ring, &field)?;
    let terms = p
        .into_terms()
        .into_iter()
        .map(|(m, c)| Ok((m, C::from_cyclo(&c, ring.field())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_terms(ring, terms))
}

/// Parses a cyclotomic number such as `1/2*z_3 - 1` in Q(zeta_n).
pub fn parse_cyclo(s: &str, field: &Arc<CycloField>) -> Result<CycloNumber> {
    let ring = Ring::new(&[], super::MonomialOrder::GrevLex, FieldTag::Cyclotomic(field.conductor()));
    let p = parse_in(s, ring, field)?;
    Ok(p.leading_coeff().cloned().unwrap_or_else(|| CycloNumber::zero(field)))
}
