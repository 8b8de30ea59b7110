use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Most variables any ring in this crate uses: x, y, z plus one
/// elimination variable.
pub const MAX_VARS: usize = 4;

/// Exponent vector. Unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    /// Panics if more than [`MAX_VARS`] exponents are given or one exceeds
    /// `u16::MAX`.
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a -= *b;
        }
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent, as a bit set.
    pub fn support(&self) -> u8 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Moves exponents `shift` slots to the right (used to prepend an
    /// elimination variable).
    pub fn shifted_right(&self, shift: usize) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS - shift {
            m.exps[i + shift] = self.exps[i];
        }
        m
    }

    pub fn shifted_left(&self, shift: usize) -> Monomial {
        let mut m = Monomial::ONE;
        for i in shift..MAX_VARS {
            m.exps[i - shift] = self.exps[i];
        }
        m
    }

    /// All monomials of total degree `d` in the first `nvars` variables,
    /// in lexicographically decreasing order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::new(&cur[..nvars]));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, nvars, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, nvars, d, &mut [0; MAX_VARS], &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Monomial orders. `Elimination(k)` is the block order that compares the
/// first `k` variables by graded reverse lexicographic order and breaks
/// ties with graded reverse lexicographic order on the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Elimination(u8),
}

impl MonomialOrder {
    /// Packs the comparison data into a `u64` whose natural order is the
    /// monomial order. Exact for exponents and block degrees below 2^16.
    #[inline]
    pub fn key(&self, m: &Monomial, nvars: usize) -> u64 {
        let e = &m.exps;
        match *self {
            MonomialOrder::Lex => e[..nvars].iter().fold(0u64, |k, &x| (k << 16) | x as u64),
            MonomialOrder::GrevLex => grevlex_block(0, e, 0, nvars),
            MonomialOrder::Elimination(k) => {
                let k = (k as usize).min(nvars);
                let hi = grevlex_block(0, e, 0, k);
                grevlex_block(hi, e, k, nvars)
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        self.key(a, nvars).cmp(&self.key(b, nvars))
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim{k}"),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(MonomialOrder::GrevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => s.strip_prefix("elim")?.parse().ok().map(MonomialOrder::Elimination),
        }
    }
}

#[inline]
fn grevlex_block(mut k: u64, e: &[u16; MAX_VARS], start: usize, end: usize) -> u64 {
    if start >= end {
        return k;
    }
    let deg: u64 = e[start..end].iter().map(|&x| x as u64).sum();
    k = (k << 16) | deg;
    for i in (start + 1..end).rev() {
        k = (k << 16) | (0xFFFF - e[i] as u64);
    }
    k
}
