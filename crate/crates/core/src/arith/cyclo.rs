use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upward. The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("lead of zero polynomial")
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Rational::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::ZERO;
        UniPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z)).collect())
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::ZERO; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let k = top - dd + j;
                    rem[k] = &rem[k] - &(&c * d);
                }
                quot[top - dd] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Rational::is_zero) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Renders the polynomial in the variable `var`, highest power first.
    pub fn render(&self, var: &str) -> String {
        render_terms(&self.coeffs, var)
    }
}

fn render_terms(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match k {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The n-th cyclotomic polynomial, via `z^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: u32) -> Result<UniPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic polynomial needs n >= 1".into()));
    }
    let mut acc = {
        let mut c = vec![Rational::ZERO; n as usize + 1];
        c[0] = Rational::from_int(-1);
        c[n as usize] = Rational::ONE;
        UniPoly::new(c)
    };
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = acc.div_rem(&cyclotomic_polynomial(d)?)?;
        debug_assert!(r.is_zero());
        acc = q;
    }
    Ok(acc)
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The field Q(zeta_n), carried around by every element so arithmetic never
/// needs a lookup table.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    modulus: UniPoly,
}

impl CycloField {
    pub fn new(conductor: u32) -> Result<Arc<CycloField>> {
        let modulus = cyclotomic_polynomial(conductor)?;
        Ok(Arc::new(CycloField { conductor, modulus }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Extension degree phi(conductor).
    pub fn degree(&self) -> usize {
        self.modulus.coeffs.len() - 1
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }
}

/// Element of Q(zeta_n) as a residue modulo Phi_n.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloNumber {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber { field: field.clone(), coeffs: vec![Rational::ZERO; field.degree()] }
    }

    pub fn from_rational(field: &Arc<CycloField>, q: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::ONE)
    }

    /// zeta^k, reduced.
    pub fn root_power(field: &Arc<CycloField>, k: i64) -> Self {
        let n = field.conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let mut c = vec![Rational::ZERO; e + 1];
        c[e] = Rational::ONE;
        Self::reduce(field, UniPoly::new(c))
    }

    /// Residue class of an arbitrary polynomial in zeta.
    pub fn from_poly(field: &Arc<CycloField>, p: &UniPoly) -> Self {
        Self::reduce(field, p.clone())
    }

    fn reduce(field: &Arc<CycloField>, p: UniPoly) -> Self {
        let phi = field.degree();
        let mut c = p.coeffs;
        let m = &field.modulus.coeffs;
        while c.len() > phi {
            let top = c.len() - 1;
            let lead = c.pop().unwrap();
            if !lead.is_zero() {
                // Phi_n is monic: z^phi = -(m_0 + ... + m_{phi-1} z^{phi-1})
                for (j, mj) in m[..phi].iter().enumerate() {
                    if !mj.is_zero() {
                        let k = top - phi + j;
                        c[k] = &c[k] - &(&lead * mj);
                    }
                }
            }
        }
        c.resize(phi, Rational::ZERO);
        CycloNumber { field: field.clone(), coeffs: c }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, when it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Rational::is_zero).then(|| &self.coeffs[0])
    }

    /// Number of nonzero coordinates in the power basis.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.conductor != other.field.conductor {
            return Err(Error::ConductorMismatch(self.field.conductor, other.field.conductor));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.field.degree() == 1 {
            return CycloNumber { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let phi = self.field.degree();
        let mut prod = vec![Rational::ZERO; 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        Self::reduce(&self.field, UniPoly::new(prod))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.inv()?));
        }
        // invariant: s_i * a == r_i (mod Phi)
        let (mut r0, mut r1) = (self.field.modulus.clone(), UniPoly::new(self.coeffs.clone()));
        let (mut s0, mut s1) = (UniPoly::default(), UniPoly::from_ints(&[1]));
        while r1.degree().is_some_and(|d| d > 0) {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Phi_n is irreducible
        let c = r1.coeffs.first().ok_or(Error::DivisionByZero)?.inv()?;
        let s = UniPoly::new(s1.coeffs.iter().map(|x| x * &c).collect());
        Ok(Self::reduce(&self.field, s))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
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
        acc
    }

    /// Re-expresses the element in Q(zeta_m) for a multiple m of the
    /// conductor, using zeta_n = zeta_m^(m/n).
    pub fn promote(&self, target: &Arc<CycloField>) -> Result<Self> {
        let n = self.field.conductor;
        let m = target.conductor;
        if !m.is_multiple_of(n) {
            return Err(Error::ConductorMismatch(n, m));
        }
        let step = (m / n) as usize;
        let mut c = vec![Rational::ZERO; (self.coeffs.len().saturating_sub(1)) * step + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[k * step] = a.clone();
        }
        Ok(Self::reduce(target, UniPoly::new(c)))
    }

    pub fn render(&self) -> String {
        render_terms(&self.coeffs, &format!("z_{}", self.field.conductor))
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    /// Panics on a conductor mismatch; see [`CycloNumber::try_add`].
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_add(rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_sub(rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_mul(rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render())
    }
}
