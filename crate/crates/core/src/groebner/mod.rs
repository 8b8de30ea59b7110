//! Groebner bases and ideal arithmetic in Q[x, y, z].

mod buchberger;
mod cache;
mod ideal;

use std::collections::BTreeMap;
use std::time::Instant;

pub use buchberger::BuchbergerStats;
pub(crate) use buchberger::Weights;
pub use cache::DiskCache;
pub use ideal::{Env, Ideal};

use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, Ring};

/// A reduced Groebner basis: monic, minimal, tail-reduced, sorted by
/// increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<C: Scalar = Rational> {
    ring: Ring,
    polys: Vec<Poly<C>>,
}

impl<C: Scalar> GroebnerBasis<C> {
    /// Runs Buchberger's algorithm on `gens` in `ring`.
    pub fn compute(gens: &[Poly<C>], ring: Ring) -> Result<Self> {
        Self::compute_with(gens, ring, None, &mut BuchbergerStats::default())
    }

    pub fn compute_with(
        gens: &[Poly<C>],
        ring: Ring,
        deadline: Option<Instant>,
        stats: &mut BuchbergerStats,
    ) -> Result<Self> {
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(ring.describe(), g.ring().describe()));
            }
        }
        let polys = buchberger::buchberger(gens, ring, Weights::for_ring(&ring), deadline, stats)?;
        Ok(GroebnerBasis { ring, polys })
    }

    /// Wraps polynomials already known to form a reduced basis.
    pub(crate) fn from_reduced_unchecked(ring: Ring, mut polys: Vec<Poly<C>>) -> Self {
        polys.sort_by_key(|p| ring.key(p.leading_monomial().expect("nonzero")));
        GroebnerBasis { ring, polys }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn polys(&self) -> &[Poly<C>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| *p.leading_monomial().unwrap()).collect()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.polys.iter().filter_map(|p| p.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.polys.iter().filter_map(|p| p.degree()).max()
    }

    /// The remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Poly<C>) -> Result<Poly<C>> {
        if p.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.describe(), p.ring().describe()));
        }
        Ok(reduce_by(self.ring, &self.polys, p))
    }

    pub fn contains(&self, p: &Poly<C>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    fn divisible(&self, m: &Monomial) -> bool {
        self.polys.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// Dimension of the degree-`t` piece of the ideal: degree-`t` monomials
    /// minus standard monomials. Needs a degree-compatible order.
    pub fn hilbert_dim(&self, t: u32) -> Result<usize> {
        if !self.ring.order().is_degree_compatible() {
            return Err(Error::InvalidArgument(format!(
                "hilbert_dim needs a degree-compatible order, got {}",
                self.ring.order().name()
            )));
        }
        Ok(Monomial::all_of_degree(self.ring.nvars(), t).iter().filter(|m| self.divisible(m)).count())
    }

    /// Whether every S-polynomial of a basis pair reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let n = self.polys.len();
        (0..n).all(|i| {
            (i + 1..n)
                .all(|j| reduce_by(self.ring, &self.polys, &s_polynomial(&self.polys[i], &self.polys[j])).is_zero())
        })
    }
}

/// S-polynomial of two monic polynomials.
pub fn s_polynomial<C: Scalar>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let cf = f.leading_coeff().unwrap().inv().expect("nonzero");
    let cg = g.leading_coeff().unwrap().inv().expect("nonzero");
    &f.mul_term(&l.div(lf), &cf) - &g.mul_term(&l.div(lg), &cg)
}

/// Full reduction of `p` by `reducers`, whose leading coefficients must be one.
fn reduce_by<C: Scalar>(ring: Ring, reducers: &[Poly<C>], p: &Poly<C>) -> Poly<C> {
    let mut acc: BTreeMap<u64, (Monomial, C)> = p.terms().iter().map(|(m, c)| (ring.key(m), (*m, c.clone()))).collect();
    let mut rem = Vec::new();
    while let Some((_, (m, c))) = acc.pop_last() {
        let Some(g) = reducers.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) else {
            rem.push((m, c));
            continue;
        };
        let q = m.div(g.leading_monomial().unwrap());
        for (gm, gc) in &g.terms()[1..] {
            let mm = gm.mul(&q);
            let d = gc.mul(&c).neg();
            use std::collections::btree_map::Entry;
            match acc.entry(ring.key(&mm)) {
                Entry::Vacant(v) => {
                    v.insert((mm, d));
                }
                Entry::Occupied(mut o) => {
                    let s = o.get().1.add(&d);
                    if s.is_zero() {
                        o.remove();
                    } else {
                        o.get_mut().1 = s;
                    }
                }
            }
        }
    }
    Poly::from_sorted_unchecked(ring, rem)
}

/// Reduced Groebner basis of `gens` in the given order.
pub fn buchberger<C: Scalar>(gens: &[Poly<C>], order: MonomialOrder) -> Result<GroebnerBasis<C>> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroIdeal);
    };
    let ring = first.ring().with_order(order);
    let gens: Vec<Poly<C>> = gens.iter().map(|g| g.with_order(order)).collect();
    GroebnerBasis::compute(&gens, ring)
}

pub fn normal_form<C: Scalar>(p: &Poly<C>, basis: &GroebnerBasis<C>) -> Result<Poly<C>> {
    basis.normal_form(p)
}

/// Krull dimension of `k[x_0..x_{nvars-1}] / (monos)`: the size of the
/// largest set of variables containing the support of no generator.
/// Returns -1 for the unit ideal.
pub fn monomial_ideal_dimension(monos: &[Monomial], nvars: usize) -> i32 {
    if monos.contains(&Monomial::ONE) {
        return -1;
    }
    (0u8..1 << nvars)
        .filter(|&s| monos.iter().all(|m| m.support() & !s != 0))
        .map(|s| s.count_ones() as i32)
        .max()
        .unwrap_or(0)
}
