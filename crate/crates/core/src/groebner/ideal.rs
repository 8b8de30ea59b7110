use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use super::{BuchbergerStats, DiskCache, GroebnerBasis};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, Ring};

/// Execution context shared by an ideal and everything derived from it.
#[derive(Clone, Debug, Default)]
pub struct Env {
    cache: Option<Arc<DiskCache>>,
    deadline: Option<Instant>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(mut self, cache: Arc<DiskCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn cache(&self) -> Option<&Arc<DiskCache>> {
        self.cache.as_ref()
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    /// Groebner basis through the disk cache when one is configured.
    fn basis(&self, label: &str, gens: &[Poly<Rational>], ring: Ring) -> Result<GroebnerBasis> {
        let Some(cache) = &self.cache else {
            return GroebnerBasis::compute_with(gens, ring, self.deadline, &mut BuchbergerStats::default());
        };
        let key = DiskCache::key(label, ring, gens);
        if let Some(polys) = cache.load(&key, ring)? {
            return Ok(GroebnerBasis::from_reduced_unchecked(ring, polys));
        }
        let gb = GroebnerBasis::compute_with(gens, ring, self.deadline, &mut BuchbergerStats::default())?;
        cache.store(&key, ring, gb.polys())?;
        Ok(gb)
    }
}

type Memo = Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// Homogeneous ideal of Q[x, y, z], given by generators, with its Groebner
/// bases computed on demand and remembered per monomial order.
#[derive(Clone)]
pub struct Ideal {
    gens: Vec<Poly<Rational>>,
    env: Env,
    memo: Memo,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped and duplicates (up to scalars) merged.
    /// Every generator must be homogeneous, and at least one nonzero.
    pub fn new(gens: impl IntoIterator<Item = Poly<Rational>>) -> Result<Self> {
        Self::with_env(gens, Env::default())
    }

    pub fn with_env(gens: impl IntoIterator<Item = Poly<Rational>>, env: Env) -> Result<Self> {
        let ring = Ring::xyz();
        let mut out: Vec<Poly<Rational>> = Vec::new();
        for g in gens {
            if g.ring().vars() != ring.vars() || g.ring().field() != ring.field() {
                return Err(Error::RingMismatch(ring.describe(), g.ring().describe()));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            let g = g.with_order(MonomialOrder::GrevLex);
            let key = g.monic();
            if !out.iter().any(|h| h.monic() == key) {
                out.push(g);
            }
        }
        if out.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Ideal { gens: out, env, memo: Memo::default() })
    }

    /// Ideal generated by monomials, kept minimal.
    pub fn monomial(monos: impl IntoIterator<Item = Monomial>, env: Env) -> Result<Self> {
        let monos = minimalize(monos.into_iter().collect());
        let ring = Ring::xyz();
        Self::with_env(monos.into_iter().map(|m| Poly::monomial(ring, m, Rational::ONE)), env)
    }

    /// The irrelevant ideal (x, y, z).
    pub fn maximal() -> Self {
        Self::monomial((0..3).map(|i| Monomial::var(i, 1)), Env::default()).expect("nonzero")
    }

    /// The ideal (x_i, x_j) of a coordinate point.
    pub fn coordinate(i: usize, j: usize) -> Result<Self> {
        if i >= 3 || j >= 3 || i == j {
            return Err(Error::InvalidArgument(format!("no coordinate ideal ({i}, {j})")));
        }
        Self::monomial([Monomial::var(i, 1), Monomial::var(j, 1)], Env::default())
    }

    pub fn ring(&self) -> Ring {
        Ring::xyz()
    }

    pub fn gens(&self) -> &[Poly<Rational>] {
        &self.gens
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// The same ideal (sharing computed bases) under another environment.
    pub fn in_env(&self, env: Env) -> Self {
        Ideal { gens: self.gens.clone(), env, memo: self.memo.clone() }
    }

    fn derived(&self, gens: Vec<Poly<Rational>>) -> Result<Self> {
        Self::with_env(gens, self.env.clone())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() == 1)
    }

    fn monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    /// Reduced Groebner basis for graded reverse lexicographic order.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_in(MonomialOrder::GrevLex)
    }

    pub fn groebner_in(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.memo.lock().unwrap().get(&order) {
            return Ok(gb.clone());
        }
        let ring = self.ring().with_order(order);
        let gb = if self.is_monomial() {
            let mut polys: Vec<Poly<Rational>> =
                minimalize(self.monomials()).into_iter().map(|m| Poly::monomial(ring, m, Rational::ONE)).collect();
            polys.sort_by_key(|p| ring.key(p.leading_monomial().unwrap()));
            GroebnerBasis::from_reduced_unchecked(ring, polys)
        } else {
            let gens: Vec<_> = self.gens.iter().map(|g| g.with_order(order)).collect();
            self.env.basis("groebner", &gens, ring)?
        };
        let gb = Arc::new(gb);
        self.memo.lock().unwrap().insert(order, gb.clone());
        Ok(gb)
    }

    fn prefill(&self, gb: GroebnerBasis) {
        self.memo.lock().unwrap().insert(gb.ring().order(), Arc::new(gb));
    }

    pub fn normal_form(&self, p: &Poly<Rational>) -> Result<Poly<Rational>> {
        let gb = self.groebner()?;
        gb.normal_form(&p.with_order(MonomialOrder::GrevLex))
    }

    pub fn contains(&self, p: &Poly<Rational>) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if self.is_monomial() {
            let monos = self.monomials();
            return Ok(p.terms().iter().all(|(t, _)| monos.iter().any(|m| m.divides(t))));
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, by comparing reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.groebner()?.polys() == other.groebner()?.polys())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Self> {
        self.derived(self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn product(&self, other: &Ideal) -> Result<Self> {
        if self.is_monomial() && other.is_monomial() {
            let (a, b) = (self.monomials(), other.monomials());
            let prods: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect();
            return Self::monomial(prods, self.env.clone());
        }
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                out.push(f * g);
            }
        }
        self.derived(out)
    }

    /// `k`-fold power, generated by products over multisets of generators.
    pub fn power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("ideal power 0 is the unit ideal".into()));
        }
        if self.is_monomial() {
            let mut cur = self.clone();
            for _ in 1..k {
                cur = cur.product(self)?;
            }
            return Ok(cur);
        }
        let n = self.gens.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; k as usize];
        loop {
            let mut p = self.gens[idx[0]].clone();
            for &i in &idx[1..] {
                p = &p * &self.gens[i];
            }
            out.push(p);
            // next non-decreasing index tuple
            let Some(pos) = (0..idx.len()).rev().find(|&j| idx[j] + 1 < n) else { break };
            let v = idx[pos] + 1;
            for slot in &mut idx[pos..] {
                *slot = v;
            }
        }
        self.derived(out)
    }

    /// `I ∩ J` by eliminating `w` from `w I + (1 - w) J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Self> {
        self.env.check_deadline()?;
        if self.is_monomial() && other.is_monomial() {
            let (a, b) = (self.monomials(), other.monomials());
            let lcms: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
            return Self::monomial(lcms, self.env.clone());
        }
        self.intersect_by_elimination(other)
    }

    /// The elimination route of [`Ideal::intersect`], without the monomial
    /// shortcut.
    pub fn intersect_by_elimination(&self, other: &Ideal) -> Result<Self> {
        self.env.check_deadline()?;
        let base = self.ring();
        let ring = base.elimination_extension()?;
        let w = Poly::monomial(ring, Monomial::var(0, 1), Rational::ONE);
        let one_minus_w = &Poly::constant(ring, Rational::ONE) - &w;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(&w * &f.embed_shifted(ring, 1));
        }
        for g in &other.gens {
            gens.push(&one_minus_w * &g.embed_shifted(ring, 1));
        }
        let gb = self.env.basis("intersect", &gens, ring)?;
        let polys: Vec<Poly<Rational>> = gb.polys().iter().filter_map(|p| p.restrict_shifted(base, 1)).collect();
        let out = self.derived(polys.clone())?;
        // the w-free part of a reduced elimination basis is itself reduced
        out.prefill(GroebnerBasis::from_reduced_unchecked(base, polys));
        Ok(out)
    }

    pub fn hilbert_dim(&self, t: u32) -> Result<usize> {
        self.groebner()?.hilbert_dim(t)
    }

    /// Least degree of a nonzero element.
    pub fn alpha(&self) -> Result<u32> {
        self.groebner()?.min_degree().ok_or(Error::ZeroIdeal)
    }

    /// Image under a permutation of the variables (variable `i` goes to
    /// `perm[i]`).
    pub fn permute(&self, perm: &[usize; 3]) -> Result<Self> {
        self.derived(self.gens.iter().map(|g| g.permute_vars(perm)).collect())
    }
}

/// Drops monomials divisible by another one in the list.
fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(|m| (m.degree(), *m));
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|d| d.divides(&m)) {
            out.push(m);
        }
    }
    out
}
