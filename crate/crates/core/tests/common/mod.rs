//! Seeded property suites shared by `properties` and `acceptance`.

#![allow(dead_code)]

use fermat_core::arith::{CycloField, CycloNumber, Rational};
use fermat_core::fermat::Session;
use fermat_core::groebner::{buchberger, Ideal};
use fermat_core::poly::{Monomial, MonomialOrder, Poly, Ring};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

fn runner(cases: u32, salt: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut seed = [7u8; 32];
    seed[0] = salt;
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

/// Homogeneous polynomial of degree 1..=max_deg with small integer coefficients.
pub fn homogeneous(max_deg: u32) -> impl Strategy<Value = Poly<Rational>> {
    (1..=max_deg).prop_flat_map(|d| {
        let monos = Monomial::all_of_degree(3, d);
        proptest::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
            let terms = monos.iter().zip(cs).map(|(m, c)| (*m, Rational::from_int(c)));
            Poly::from_terms(Ring::xyz(), terms)
        })
    })
}

fn nonzero_homogeneous(max_deg: u32) -> impl Strategy<Value = Poly<Rational>> {
    homogeneous(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Small random generator sets: 2 or 3 sparse forms of degree at most 3.
fn generator_sets() -> impl Strategy<Value = Vec<Poly<Rational>>> {
    let sparse = (1u32..=3, proptest::collection::vec((0usize..10, -2i64..=2), 1..=3)).prop_map(|(d, picks)| {
        let monos = Monomial::all_of_degree(3, d);
        let terms = picks.into_iter().map(|(i, c)| (monos[i % monos.len()], Rational::from_int(c)));
        Poly::from_terms(Ring::xyz(), terms)
    });
    proptest::collection::vec(sparse.prop_filter("nonzero", |p| !p.is_zero()), 2..=3)
}

fn check<T: std::fmt::Debug>(name: &str, result: Result<(), TestError<T>>) -> Result<(), String> {
    result.map_err(|e| format!("{name}: {e}"))
}

/// Reduced bases do not depend on the order of the generators.
pub fn groebner_determinism(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 1);
    let res = r.run(&generator_sets(), |gens| {
        let a = buchberger(&gens, MonomialOrder::GrevLex).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = buchberger(&rev, MonomialOrder::GrevLex).unwrap();
        prop_assert_eq!(a.polys(), b.polys());
        Ok(())
    });
    check("groebner determinism", res)
}

/// Every S-polynomial of a computed basis reduces to zero, and the basis
/// still contains the input generators.
pub fn s_polynomials_reduce(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 2);
    let res = r.run(&generator_sets(), |gens| {
        let gb = buchberger(&gens, MonomialOrder::GrevLex).unwrap();
        prop_assert!(gb.s_pairs_reduce_to_zero());
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
        Ok(())
    });
    check("S-polynomial reduction", res)
}

/// `x F_x + y F_y + z F_z = deg(F) F` for forms.
pub fn euler_relation(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 3);
    let res = r.run(&nonzero_homogeneous(5), |f| {
        let d = f.homogeneous_degree().unwrap();
        let ring = Ring::xyz();
        let mut sum = Poly::zero(ring);
        for (i, idx) in [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().enumerate() {
            sum = &sum + &(&Poly::var(ring, i) * &f.partial_derivative(idx).unwrap());
        }
        prop_assert_eq!(sum, f.scale(&Rational::from_int(d as i64)));
        Ok(())
    });
    check("Euler relation", res)
}

fn cyclo_point(n: u32) -> impl Strategy<Value = Vec<CycloNumber>> {
    let field = CycloField::new(n).unwrap();
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, field.degree()), 3).prop_map(move |coords| {
        coords
            .into_iter()
            .map(|cs| {
                let p = fermat_core::arith::UniPoly::from_ints(&cs);
                CycloNumber::from_poly(&field, &p)
            })
            .collect()
    })
}

/// Evaluation at a point of Q(zeta_n)^3 respects sums and products.
pub fn evaluation_homomorphism(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 4);
    let strat = (prop_oneof![Just(3u32), Just(4), Just(5), Just(12)], homogeneous(3), homogeneous(3))
        .prop_flat_map(|(n, f, g)| (cyclo_point(n), Just(f), Just(g)));
    let res = r.run(&strat, |(pt, f, g)| {
        let fp = f.evaluate(&pt).unwrap();
        let gp = g.evaluate(&pt).unwrap();
        prop_assert_eq!((&f * &g).evaluate(&pt).unwrap(), &fp * &gp);
        prop_assert_eq!((&f + &g).evaluate(&pt).unwrap(), &fp + &gp);
        Ok(())
    });
    check("evaluation homomorphism", res)
}

/// `I_n^(m+1) ⊆ I_n^(m)`.
pub fn symbolic_power_nesting(session: &Session, cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 5);
    let res = r.run(&(2u32..=4, 1u32..=4), |(n, m)| {
        let big = session.symbolic_power(n, m + 1).unwrap();
        let small = session.symbolic_power(n, m).unwrap();
        prop_assert!(big.is_subset(&small).unwrap());
        Ok(())
    });
    check("symbolic-power nesting", res)
}

/// The cyclic substitution x -> y -> z -> x fixes `I_n^(m)`, so α and the
/// Hilbert function agree.
pub fn cyclic_symmetry(session: &Session, cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 6);
    let res = r.run(&(2u32..=4, 1u32..=4), |(n, m)| {
        let i = session.symbolic_power(n, m).unwrap();
        let p = i.permute(&[1, 2, 0]).unwrap();
        prop_assert_eq!(i.alpha().unwrap(), p.alpha().unwrap());
        let a = i.alpha().unwrap();
        for t in a..a + 3 {
            prop_assert_eq!(i.hilbert_dim(t).unwrap(), p.hilbert_dim(t).unwrap());
        }
        prop_assert!(i.equals(&p).unwrap());
        Ok(())
    });
    check("cyclic symmetry", res)
}

/// Membership is closed under multiplication by arbitrary forms.
pub fn membership_consistency(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 7);
    let res = r.run(&(generator_sets(), homogeneous(2), 0usize..3), |(gens, q, pick)| {
        let ideal = Ideal::new(gens.clone());
        let Ok(ideal) = ideal else { return Ok(()) };
        let p = &gens[pick % gens.len()] * &q;
        prop_assert!(ideal.contains(&p).unwrap());
        Ok(())
    });
    check("membership consistency", res)
}

/// Least degree of the reduced basis equals the least degree with a
/// nonzero graded piece.
pub fn hilbert_least_degree(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 8);
    let res = r.run(&generator_sets(), |gens| {
        let Ok(ideal) = Ideal::new(gens) else { return Ok(()) };
        let a = ideal.alpha().unwrap();
        prop_assert!(ideal.hilbert_dim(a).unwrap() > 0);
        for t in 0..a {
            prop_assert_eq!(ideal.hilbert_dim(t).unwrap(), 0);
        }
        Ok(())
    });
    check("least degree via Hilbert function", res)
}

/// Elimination and termwise intersection agree on monomial ideals.
pub fn monomial_intersection(cases: u32) -> Result<(), String> {
    let mut r = runner(cases, 9);
    let mono = proptest::collection::vec((0u32..3, 0u32..3, 0u32..3), 1..=3).prop_map(|es| {
        let monos: Vec<Monomial> =
            es.into_iter().map(|(a, b, c)| Monomial::new(&[a, b, c])).filter(|m| *m != Monomial::ONE).collect();
        monos
    });
    let res = r.run(&(mono.clone(), mono), |(a, b)| {
        if a.is_empty() || b.is_empty() {
            return Ok(());
        }
        let env = fermat_core::groebner::Env::new();
        let i = Ideal::monomial(a, env.clone()).unwrap();
        let j = Ideal::monomial(b, env).unwrap();
        let fast = i.intersect(&j).unwrap();
        let slow = i.intersect_by_elimination(&j).unwrap();
        prop_assert!(fast.equals(&slow).unwrap());
        Ok(())
    });
    check("monomial intersection", res)
}
