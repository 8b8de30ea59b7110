//! Exact coefficient arithmetic: rationals and cyclotomic numbers.

mod cyclo;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloField, CycloNumber, UniPoly};
pub use rational::Rational;

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Cyclotomic(u32),
}

impl Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("QQ"),
            FieldTag::Cyclotomic(n) => write!(f, "QQ(z_{n})"),
        }
    }
}

/// Exact field element usable as a polynomial coefficient or matrix entry.
pub trait Scalar: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn tag(&self) -> FieldTag;
    /// Embeds a rational into the field described by `like`.
    fn from_rational_like(like: &Self, q: Rational) -> Self;
    /// Embeds a rational into the field named by `tag`.
    fn from_rational_in(tag: FieldTag, q: Rational) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Cost measure used to prefer cheap pivots.
    fn weight(&self) -> u64;
    /// Image in Q(zeta_n) for the given field.
    fn to_cyclo(&self, field: &Arc<CycloField>) -> Result<CycloNumber>;
    /// Converts a cyclotomic value back, when it lies in this field.
    fn from_cyclo(c: &CycloNumber, tag: FieldTag) -> Result<Self>;
    /// The value as a rational, when it lies in Q.
    fn as_rational(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn from_rational_like(_: &Self, q: Rational) -> Self {
        q
    }
    fn from_rational_in(tag: FieldTag, q: Rational) -> Result<Self> {
        match tag {
            FieldTag::Rational => Ok(q),
            other => Err(Error::InvalidArgument(format!("rational coefficient requested in {other}"))),
        }
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        Rational::inv(self)
    }
    fn weight(&self) -> u64 {
        self.height()
    }
    fn to_cyclo(&self, field: &Arc<CycloField>) -> Result<CycloNumber> {
        Ok(CycloNumber::from_rational(field, self.clone()))
    }
    fn from_cyclo(c: &CycloNumber, _tag: FieldTag) -> Result<Self> {
        c.as_rational().cloned().ok_or_else(|| Error::InvalidArgument(format!("{c} is not rational")))
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for CycloNumber {
    fn tag(&self) -> FieldTag {
        FieldTag::Cyclotomic(self.conductor())
    }
    fn from_rational_like(like: &Self, q: Rational) -> Self {
        CycloNumber::from_rational(like.field(), q)
    }
    fn from_rational_in(tag: FieldTag, q: Rational) -> Result<Self> {
        match tag {
            FieldTag::Cyclotomic(n) => Ok(CycloNumber::from_rational(&CycloField::new(n)?, q)),
            FieldTag::Rational => Err(Error::InvalidArgument("cyclotomic coefficient requested in QQ".into())),
        }
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
    fn is_one(&self) -> bool {
        CycloNumber::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        CycloNumber::inv(self)
    }
    fn weight(&self) -> u64 {
        self.coeffs().iter().filter(|c| !c.is_zero()).map(|c| 1 + c.height()).sum()
    }
    fn to_cyclo(&self, field: &Arc<CycloField>) -> Result<CycloNumber> {
        if self.conductor() == field.conductor() {
            Ok(self.clone())
        } else {
            self.promote(field)
        }
    }
    fn from_cyclo(c: &CycloNumber, tag: FieldTag) -> Result<Self> {
        match tag {
            FieldTag::Cyclotomic(n) if n == c.conductor() => Ok(c.clone()),
            FieldTag::Cyclotomic(n) => c.promote(&CycloField::new(n)?),
            FieldTag::Rational => Err(Error::InvalidArgument("expected a cyclotomic field".into())),
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        CycloNumber::as_rational(self).cloned()
    }
}
