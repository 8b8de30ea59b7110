use std::collections::BTreeMap;
use std::time::Instant;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Ring, MAX_VARS};

/// Grading used for sugar degrees. Elimination variables get weight zero so
/// that `w * f` and `(1 - w) * g` stay homogeneous.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Weights(pub [u32; MAX_VARS]);

impl Weights {
    pub fn standard() -> Self {
        Weights([1; MAX_VARS])
    }

    pub fn for_ring(ring: &Ring) -> Self {
        match ring.order() {
            crate::poly::MonomialOrder::Elimination(k) => {
                let mut w = [1; MAX_VARS];
                for slot in w.iter_mut().take(k as usize) {
                    *slot = 0;
                }
                Weights(w)
            }
            _ => Self::standard(),
        }
    }

    fn of(&self, m: &Monomial) -> u32 {
        m.exps().iter().zip(&self.0).map(|(&e, &w)| e as u32 * w).sum()
    }

    fn of_poly<C: Scalar>(&self, p: &Poly<C>) -> u32 {
        p.terms().iter().map(|(m, _)| self.of(m)).max().unwrap_or(0)
    }
}

/// Counters reported by a run.
#[derive(Clone, Copy, Debug, Default)]
pub struct BuchbergerStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub pairs_pruned: u64,
    pub basis_size: usize,
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Input(usize),
    Pair(usize, usize),
}

#[derive(Clone, Copy, Debug)]
struct Pending {
    task: Task,
    sugar: u32,
    lcm: Monomial,
    key: u64,
}

/// Working accumulator: terms keyed by their order key.
type Acc<C> = BTreeMap<u64, (Monomial, C)>;

fn acc_add<C: Scalar>(acc: &mut Acc<C>, key: u64, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(v) => {
            v.insert((m, c));
        }
        Entry::Occupied(mut o) => {
            let s = o.get().1.add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                o.get_mut().1 = s;
            }
        }
    }
}

struct State<'a, C> {
    ring: Ring,
    weights: Weights,
    polys: Vec<Poly<C>>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    deadline: Option<Instant>,
    stats: &'a mut BuchbergerStats,
}

impl<C: Scalar> State<'_, C> {
    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    fn lt(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis polynomials are nonzero")
    }

    /// Active reducer with the fewest terms whose leading monomial divides `m`.
    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        self.active.iter().copied().filter(|&i| self.lt(i).divides(m)).min_by_key(|&i| self.polys[i].len())
    }

    /// Full reduction of the accumulated polynomial by the active set;
    /// returns the remainder terms in decreasing order.
    fn reduce_terms(&self, mut acc: Acc<C>) -> Result<Vec<(Monomial, C)>> {
        let mut rem: Vec<(Monomial, C)> = Vec::new();
        let mut steps = 0u32;
        while let Some((_, (m, c))) = acc.pop_last() {
            steps += 1;
            if steps.is_multiple_of(4096) {
                self.check_deadline()?;
            }
            match self.find_reducer(&m) {
                Some(i) => {
                    let g = &self.polys[i];
                    let q = m.div(g.leading_monomial().unwrap());
                    for (gm, gc) in &g.terms()[1..] {
                        let mm = gm.mul(&q);
                        acc_add(&mut acc, self.ring.key(&mm), mm, gc.mul(&c).neg());
                    }
                }
                None => rem.push((m, c)),
            }
        }
        Ok(rem)
    }

    fn reduce(&self, acc: Acc<C>) -> Result<Poly<C>> {
        Ok(Poly::from_sorted_unchecked(self.ring, self.reduce_terms(acc)?).monic())
    }

    fn load(&self, p: &Poly<C>) -> Acc<C> {
        p.terms().iter().map(|(m, c)| (self.ring.key(m), (*m, c.clone()))).collect()
    }

    fn s_poly(&self, i: usize, j: usize) -> Acc<C> {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let l = self.lt(i).lcm(self.lt(j));
        let (qf, qg) = (l.div(self.lt(i)), l.div(self.lt(j)));
        let mut acc = Acc::new();
        for (m, c) in &f.terms()[1..] {
            let mm = m.mul(&qf);
            acc_add(&mut acc, self.ring.key(&mm), mm, c.clone());
        }
        for (m, c) in &g.terms()[1..] {
            let mm = m.mul(&qg);
            acc_add(&mut acc, self.ring.key(&mm), mm, c.neg());
        }
        acc
    }

    fn pending_pair(&self, i: usize, j: usize) -> Pending {
        let l = self.lt(i).lcm(self.lt(j));
        let si = self.sugar[i] + self.weights.of(&l.div(self.lt(i)));
        let sj = self.sugar[j] + self.weights.of(&l.div(self.lt(j)));
        Pending { task: Task::Pair(i, j), sugar: si.max(sj), lcm: l, key: self.ring.key(&l) }
    }

    /// Gebauer-Moeller installation of the new element `h`.
    fn update(&mut self, h: usize, pending: &mut Vec<Pending>) {
        let lth = *self.lt(h);
        let candidates: Vec<Pending> = self.active.iter().map(|&g| self.pending_pair(h, g)).collect();
        let coprime = |p: &Pending, st: &Self| match p.task {
            Task::Pair(a, b) => st.lt(a).is_coprime(st.lt(b)),
            Task::Input(_) => false,
        };

        // chain criterion among the new pairs
        let mut kept: Vec<Pending> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let redundant = !coprime(p, self)
                && (candidates[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm))
                    || kept.iter().any(|q| q.lcm.divides(&p.lcm)));
            if redundant {
                self.stats.pairs_pruned += 1;
            } else {
                kept.push(*p);
            }
        }
        // product criterion
        let before = kept.len();
        kept.retain(|p| !coprime(p, self));
        self.stats.pairs_pruned += (before - kept.len()) as u64;

        // prune old pairs whose lcm is strictly covered through h
        let before = pending.len();
        pending.retain(|p| match p.task {
            Task::Input(_) => true,
            Task::Pair(a, b) => !lth.divides(&p.lcm) || self.lt(a).lcm(&lth) == p.lcm || self.lt(b).lcm(&lth) == p.lcm,
        });
        self.stats.pairs_pruned += (before - pending.len()) as u64;
        pending.extend(kept);

        let polys = &self.polys;
        self.active.retain(|&g| !lth.divides(polys[g].leading_monomial().unwrap()));
        self.active.push(h);
    }

    fn insert(&mut self, p: Poly<C>, sugar: u32, pending: &mut Vec<Pending>) {
        let h = self.polys.len();
        self.polys.push(p);
        self.sugar.push(sugar);
        self.update(h, pending);
    }

    /// Minimal, tail-reduced, monic basis from the active set.
    fn finish(self) -> Result<Vec<Poly<C>>> {
        let minimal: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&i| !self.active.iter().any(|&j| j != i && self.lt(j).divides(self.lt(i))))
            .collect();
        debug_assert_eq!(minimal.len(), self.active.len());
        let mut out = Vec::with_capacity(minimal.len());
        for &i in &minimal {
            let mut acc = self.load(&self.polys[i]);
            let (_, lead) = acc.pop_last().expect("nonzero");
            // tail monomials are below lt(i), so i never reduces its own tail
            let mut terms = vec![lead];
            terms.extend(self.reduce_terms(acc)?);
            out.push(Poly::from_sorted_unchecked(self.ring, terms));
        }
        out.sort_by_key(|p| self.ring.key(p.leading_monomial().unwrap()));
        self.stats.basis_size = out.len();
        Ok(out)
    }
}

/// Computes the reduced Groebner basis of `gens` in the ring (and order)
/// of the generators.
pub(crate) fn buchberger<C: Scalar>(
    gens: &[Poly<C>],
    ring: Ring,
    weights: Weights,
    deadline: Option<Instant>,
    stats: &mut BuchbergerStats,
) -> Result<Vec<Poly<C>>> {
    let inputs: Vec<Poly<C>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut st = State { ring, weights, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), deadline, stats };
    let mut pending: Vec<Pending> = inputs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let lt = *g.leading_monomial().unwrap();
            Pending { task: Task::Input(i), sugar: weights.of_poly(g), lcm: lt, key: ring.key(&lt) }
        })
        .collect();

    // next task: least sugar, then least lcm in the order
    while let Some(pos) = pending.iter().enumerate().min_by_key(|(_, p)| (p.sugar, p.key)).map(|(i, _)| i) {
        let task = pending.swap_remove(pos);
        st.check_deadline()?;
        let (acc, sugar) = match task.task {
            Task::Input(i) => (st.load(&inputs[i]), task.sugar),
            Task::Pair(i, j) => {
                st.stats.pairs_reduced += 1;
                (st.s_poly(i, j), task.sugar)
            }
        };
        let h = st.reduce(acc)?;
        if h.is_zero() {
            st.stats.zero_reductions += 1;
            continue;
        }
        st.insert(h, sugar, &mut pending);
    }
    st.finish()
}
