//! Sparse multivariate polynomials over an exact field.

mod monomial;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::{parse_cyclo, parse_poly};

use crate::arith::{CycloField, CycloNumber, FieldTag, Rational, Scalar};
use crate::error::{Error, Result};
use crate::linalg;

pub const XYZ: &[&str] = &["x", "y", "z"];
pub const WXYZ: &[&str] = &["w", "x", "y", "z"];

/// Variables, monomial order and coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: &'static [&'static str],
    order: MonomialOrder,
    field: FieldTag,
}

impl Ring {
    pub fn new(vars: &'static [&'static str], order: MonomialOrder, field: FieldTag) -> Self {
        assert!(vars.len() <= MAX_VARS);
        Ring { vars, order, field }
    }

    /// Q[x, y, z] with graded reverse lexicographic order.
    pub fn xyz() -> Self {
        Ring::new(XYZ, MonomialOrder::GrevLex, FieldTag::Rational)
    }

    pub fn vars(&self) -> &'static [&'static str] {
        self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn with_order(self, order: MonomialOrder) -> Self {
        Ring { order, ..self }
    }

    pub fn with_field(self, field: FieldTag) -> Self {
        Ring { field, ..self }
    }

    /// The same ring with one extra elimination variable `w` in front,
    /// ordered by the block order eliminating it.
    pub fn elimination_extension(self) -> Result<Self> {
        if self.vars != XYZ {
            return Err(Error::InvalidArgument("elimination extension needs Q[x,y,z]".into()));
        }
        Ok(Ring { vars: WXYZ, order: MonomialOrder::Elimination(1), field: self.field })
    }

    #[inline]
    pub fn key(&self, m: &Monomial) -> u64 {
        self.order.key(m, self.vars.len())
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = (0..self.nvars())
            .filter(|&i| m.exp(i) > 0)
            .map(|i| match m.exp(i) {
                1 => self.vars[i].to_string(),
                e => format!("{}^{}", self.vars[i], e),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn describe(&self) -> String {
        format!("{}/{}/{}", self.vars.join(","), self.order.name(), self.field)
    }
}

/// Sparse polynomial: nonzero terms sorted strictly decreasing in the ring's
/// monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    ring: Ring,
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero(ring: Ring) -> Self {
        Poly { ring, terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: Ring, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| std::cmp::Reverse(ring.key(m)));
        Poly { ring, terms }
    }

    /// Wraps terms already sorted and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: Ring, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.key(&w[0].0) > ring.key(&w[1].0)));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring, terms }
    }

    pub fn monomial(ring: Ring, m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Poly { ring, terms: vec![(m, c)] }
        }
    }

    pub fn constant(ring: Ring, c: C) -> Self {
        Self::monomial(ring, Monomial::ONE, c)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// The common total degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.describe(), other.ring.describe()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let ring = self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            let (ka, kb) = (ring.key(&a[i].0), ring.key(&b[j].0));
            if ka > kb {
                out.push(a[i].clone());
                i += 1;
            } else if kb > ka {
                let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { c.neg() } else { c.clone() })));
        Poly { ring, terms: out }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.mul(cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.ring, acc)
    }

    /// Multiplies by the single term `c * m`; term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Poly { ring: self.ring, terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc.mul(c))).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn one_like(&self, ring: Ring) -> Result<Self> {
        Ok(Self::constant(ring, C::from_rational_in(ring.field, Rational::ONE)?))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = self.one_like(self.ring)?;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Re-sorts the terms for a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.ring.order {
            return self.clone();
        }
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_unstable_by_key(|(m, _)| std::cmp::Reverse(ring.key(m)));
        Poly { ring, terms }
    }

    /// Moves the polynomial into `target`, whose variable list must extend
    /// this ring's by `shift` leading variables.
    pub(crate) fn embed_shifted(&self, target: Ring, shift: usize) -> Self {
        Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.shifted_right(shift), c.clone())))
    }

    /// Inverse of [`Poly::embed_shifted`]; `None` when an eliminated
    /// variable occurs.
    pub(crate) fn restrict_shifted(&self, target: Ring, shift: usize) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if (0..shift).any(|i| m.exp(i) > 0) {
                return None;
            }
            terms.push((m.shifted_left(shift), c.clone()));
        }
        Some(Self::from_terms(target, terms))
    }

    /// Applies a permutation of the variables: variable `i` becomes
    /// variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let n = self.ring.nvars();
        assert_eq!(perm.len(), n);
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = [0u32; MAX_VARS];
                for i in 0..n {
                    e[perm[i]] = m.exp(i);
                }
                (Monomial::new(&e[..n]), c.clone())
            }),
        )
    }

    /// Iterated formal partial derivative.
    pub fn partial_derivative(&self, multi_index: &[u32]) -> Result<Self> {
        let n = self.ring.nvars();
        if multi_index.len() != n {
            return Err(Error::Arity { expected: n, got: multi_index.len() });
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let mut factor: i64 = 1;
            let mut e = [0u32; MAX_VARS];
            for i in 0..n {
                let (a, d) = (m.exp(i), multi_index[i]);
                if d > a {
                    return None;
                }
                factor *= falling_factorial(a, d);
                e[i] = a - d;
            }
            let f = C::from_rational_like(c, Rational::from_int(factor));
            Some((Monomial::new(&e[..n]), c.mul(&f)))
        });
        Ok(Self::from_terms(self.ring, terms))
    }

    /// Exact evaluation at a point with cyclotomic coordinates.
    pub fn evaluate(&self, point: &[CycloNumber]) -> Result<CycloNumber> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::Arity { expected: n, got: point.len() });
        }
        let field = point[0].field().clone();
        if let Some(bad) = point.iter().find(|p| p.conductor() != field.conductor()) {
            return Err(Error::ConductorMismatch(field.conductor(), bad.conductor()));
        }
        if let FieldTag::Cyclotomic(c) = self.ring.field {
            if !field.conductor().is_multiple_of(c) {
                return Err(Error::ConductorMismatch(c, field.conductor()));
            }
        }
        let mut powers: Vec<Vec<CycloNumber>> = Vec::with_capacity(n);
        for (i, p) in point.iter().enumerate() {
            let maxe = self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0);
            let mut v = vec![CycloNumber::one(&field)];
            for k in 1..=maxe as usize {
                let next = &v[k - 1] * p;
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = CycloNumber::zero(&field);
        for (m, c) in &self.terms {
            let mut t = c.to_cyclo(&field)?;
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficient of `m`, if present.
    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        let k = self.ring.key(m);
        self.terms.binary_search_by(|(mm, _)| k.cmp(&self.ring.key(mm))).ok().map(|i| &self.terms[i].1)
    }
}

impl Poly<Rational> {
    /// The i-th variable of `ring`.
    pub fn var(ring: Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(i, 1), Rational::ONE)
    }

    /// Maps coefficients into Q(zeta_n).
    pub fn promote(&self, field: &Arc<CycloField>) -> Poly<CycloNumber> {
        Poly {
            ring: self.ring.with_field(FieldTag::Cyclotomic(field.conductor())),
            terms: self.terms.iter().map(|(m, c)| (*m, CycloNumber::from_rational(field, c.clone()))).collect(),
        }
    }

    /// Parses `s` as an element of `Q[x, y, z]`.
    pub fn parse_xyz(s: &str) -> Result<Self> {
        parse_poly(s, Ring::xyz())
    }
}

fn falling_factorial(a: u32, d: u32) -> i64 {
    (0..d).map(|i| (a - i) as i64).product()
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let is_const = *m == Monomial::ONE;
            let mono = self.ring.render_monomial(m);
            let (neg, coeff) = match c.as_rational() {
                Some(q) => (q.is_negative(), (!q.abs().is_one() || is_const).then(|| q.abs().to_string())),
                None => (false, Some(format!("({c})"))),
            };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (coeff, is_const) {
                (Some(c), true) => f.write_str(&c)?,
                (Some(c), false) => write!(f, "{c}*{mono}")?,
                (None, _) => f.write_str(&mono)?,
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    /// Panics on ring mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }
}

/// A basis of the degree-`t` graded piece of the ideal generated by `gens`:
/// every product of a generator with a monomial of complementary degree,
/// row-reduced.
pub fn graded_component_basis<C: Scalar>(gens: &[Poly<C>], t: u32) -> Result<Vec<Poly<C>>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = first.ring;
    let mut products = Vec::new();
    for g in gens {
        if g.ring != ring {
            return Err(Error::RingMismatch(ring.describe(), g.ring.describe()));
        }
        if g.is_zero() {
            continue;
        }
        let d = g.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(g.to_string()))?;
        if d > t {
            continue;
        }
        let one = g.leading_coeff().map(|c| C::from_rational_like(c, Rational::ONE)).unwrap();
        for m in Monomial::all_of_degree(ring.nvars(), t - d) {
            products.push(g.mul_term(&m, &one));
        }
    }
    Ok(linalg::reduce_polys(ring, t, products))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly<Rational> {
        Poly::parse_xyz(s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x - y") * &p("x + y"), p("x^2 - y^2"));
    }

    #[test]
    fn fermat_forms_sum_to_zero() {
        let s = &(&p("y^3 - z^3") + &p("z^3 - x^3")) + &p("x^3 - y^3");
        assert!(s.is_zero());
    }

    #[test]
    fn zeroth_power_is_one() {
        assert_eq!(p("x + y").pow(0).unwrap(), p("1"));
        assert_eq!(p("x + y").pow(3).unwrap(), p("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let q = p("x").with_order(MonomialOrder::Lex);
        assert!(matches!(p("x").checked_add(&q), Err(Error::RingMismatch(..))));
        let c = p("x").promote(&CycloField::new(3).unwrap());
        let d = p("x").promote(&CycloField::new(4).unwrap());
        assert!(c.checked_mul(&d).is_err());
    }

    #[test]
    fn terms_sorted_grevlex() {
        assert_eq!(p("z^2 + x*y + y^2 + x^2").to_string(), "x^2 + x*y + y^2 + z^2");
        assert_eq!(p("x*z + y^2").to_string(), "y^2 + x*z");
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2").partial_derivative(&[2, 0, 0]).unwrap(), p("2"));
        assert_eq!(p("x*(y^2 - z^2)").partial_derivative(&[0, 1, 0]).unwrap(), p("2*x*y"));
        assert!(p("x^2 + 3*y*z").partial_derivative(&[1, 1, 1]).unwrap().is_zero());
        assert!(p("x").partial_derivative(&[1]).is_err());
    }

    #[test]
    fn evaluation() {
        let f2 = CycloField::new(2).unwrap();
        let c = |v: i64| CycloNumber::from_rational(&f2, Rational::from_int(v));
        assert!(p("x*(y^2 - z^2)").evaluate(&[c(1), c(1), c(-1)]).unwrap().is_zero());
        assert!(p("x").evaluate(&[c(0), c(0), c(1)]).unwrap().is_zero());

        let f3 = CycloField::new(3).unwrap();
        let one = CycloNumber::one(&f3);
        let z = CycloNumber::root_power(&f3, 1);
        assert!(p("x^3 - y^3").evaluate(&[one.clone(), z, one.clone()]).unwrap().is_zero());

        let bad = [one.clone(), CycloNumber::one(&CycloField::new(4).unwrap()), one];
        assert!(matches!(p("x").evaluate(&bad), Err(Error::ConductorMismatch(..))));
    }

    #[test]
    fn graded_pieces() {
        let gens = [p("x"), p("y"), p("z")];
        assert_eq!(graded_component_basis(&gens, 1).unwrap().len(), 3);
        assert_eq!(graded_component_basis(&gens, 2).unwrap().len(), 6);
        assert!(matches!(graded_component_basis(&[p("x + 1")], 2), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn cyclic_permutation() {
        assert_eq!(p("x^2*y + z").permute_vars(&[1, 2, 0]), p("y^2*z + x"));
    }
}
