//! Degree invariants of symbolic powers and containment certificates.

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::fermat::{fermat_points, predicted_alpha, resurgence, waldschmidt_constant, FatPointScheme, Session};
use crate::groebner::{monomial_ideal_dimension, GroebnerBasis, Ideal};
use crate::interp;
use crate::poly::{graded_component_basis, Poly};

/// How a least degree was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Groebner,
    Interpolation,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "groebner" => Ok(Method::Groebner),
            "interpolation" => Ok(Method::Interpolation),
            "both" => Ok(Method::Both),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Groebner => "groebner",
            Method::Interpolation => "interpolation",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: u32,
    pub m: u32,
    pub alpha: u32,
    pub alpha_method: Method,
    pub predicted: Option<u32>,
    pub omega: Option<u32>,
    pub beta: Option<u32>,
    pub minimal_generator_degrees: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentCertificate {
    pub n: u32,
    pub m: u32,
    pub r: u32,
    pub a: u32,
    pub holds: bool,
    /// Generator of the symbolic power outside the target, in grammar text.
    pub failing_generator: Option<String>,
    pub degree_criterion_used: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaldschmidtPoint {
    pub m: u32,
    pub alpha: u32,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaldschmidtSample {
    pub n: u32,
    pub samples: Vec<WaldschmidtPoint>,
    pub inf_so_far: Rational,
    pub known_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub m: u32,
    pub r: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResurgenceScan {
    pub n: u32,
    pub cells: Vec<ScanCell>,
    /// Pairs `(m, r)` with `I^(m)` not inside `I^r`.
    pub non_containments: Vec<(u32, u32)>,
    /// Largest `m / r` among the non-containments: a lower bound for the
    /// resurgence.
    pub max_ratio: Option<Rational>,
    pub known_value: Rational,
}

pub fn alpha(ideal: &Ideal) -> Result<u32> {
    ideal.alpha()
}

/// Degrees of a minimal homogeneous generating set, with multiplicity:
/// `dim [I]_t - dim [m I]_t` copies of each `t`.
pub fn minimal_generator_degrees(ideal: &Ideal) -> Result<Vec<u32>> {
    let gb = ideal.groebner()?;
    let lo = gb.min_degree().ok_or(Error::ZeroIdeal)?;
    let hi = gb.max_degree().unwrap();
    let m_i = Ideal::maximal().in_env(ideal.env().clone()).product(ideal)?;
    let mut out = Vec::new();
    for t in lo..=hi {
        let mu = ideal.hilbert_dim(t)? - m_i.hilbert_dim(t)?;
        out.extend(std::iter::repeat_n(t, mu));
    }
    Ok(out)
}

/// Largest degree of a minimal generator.
pub fn omega(ideal: &Ideal) -> Result<u32> {
    minimal_generator_degrees(ideal)?.last().copied().ok_or(Error::ZeroIdeal)
}

/// Least `t` such that the forms of degree `t` in the ideal cut out a
/// zero-dimensional subscheme of the plane (an affine cone of dimension at
/// most one).
pub fn beta(ideal: &Ideal) -> Result<u32> {
    let gb = ideal.groebner()?;
    let lo = gb.min_degree().ok_or(Error::ZeroIdeal)?;
    let hi = gb.max_degree().unwrap();
    for t in lo..=hi {
        let piece = graded_component_basis(gb.polys(), t)?;
        if piece.is_empty() {
            continue;
        }
        let sub =
            GroebnerBasis::compute_with(&piece, piece[0].ring(), ideal.env().deadline(), &mut Default::default())?;
        if monomial_ideal_dimension(&sub.leading_monomials(), 3) <= 1 {
            return Ok(t);
        }
    }
    Err(Error::SelfCheck(format!("no degree up to {hi} cuts out a finite set")))
}

/// Least degree of `I_n^(m)` by the requested route. With `Method::Both`
/// the two routes must agree.
pub fn alpha_by(session: &Session, n: u32, m: u32, method: Method) -> Result<u32> {
    let groebner = || session.symbolic_power(n, m)?.alpha();
    let interpolation = || interp::alpha_interp(&FatPointScheme::new(fermat_points(n)?, m)?);
    match method {
        Method::Groebner => groebner(),
        Method::Interpolation => interpolation(),
        Method::Both => {
            let (g, i) = (groebner()?, interpolation()?);
            if g != i {
                return Err(Error::SelfCheck(format!(
                    "alpha(I_{n}^({m})): groebner gives {g}, interpolation gives {i}"
                )));
            }
            Ok(g)
        }
    }
}

/// Least degree plus, optionally, the generator-degree invariants.
pub fn invariant_report(session: &Session, n: u32, m: u32, method: Method, extras: bool) -> Result<InvariantReport> {
    let alpha = alpha_by(session, n, m, method)?;
    let mut report = InvariantReport {
        n,
        m,
        alpha,
        alpha_method: method,
        predicted: predicted_alpha(n, m),
        omega: None,
        beta: None,
        minimal_generator_degrees: None,
    };
    if extras {
        let ideal = session.symbolic_power(n, m)?;
        let degrees = minimal_generator_degrees(&ideal)?;
        report.omega = degrees.last().copied();
        report.beta = Some(beta(&ideal)?);
        report.minimal_generator_degrees = Some(degrees);
    }
    Ok(report)
}

/// Generators of `I^(m)` in canonical order: the reduced basis sorted by
/// degree, then leading monomial.
fn canonical_generators(ideal: &Ideal) -> Result<Vec<Poly<Rational>>> {
    let gb = ideal.groebner()?;
    let ring = gb.ring();
    let mut gens = gb.polys().to_vec();
    gens.sort_by_key(|p| (p.degree(), ring.key(p.leading_monomial().unwrap())));
    Ok(gens)
}

/// Decides `I_n^(m) ⊆ m^a I_n^r`, with `m = (x, y, z)`.
///
/// For `a > 0` the degree criterion is tried first: if `I^(m) ⊆ I^r` and
/// `α(I^(m)) >= a + ω(I^r)` the containment follows without a basis of the
/// target. Otherwise every generator is reduced modulo the target; ones of
/// degree below the target's least degree fail without reduction.
pub fn containment_check(session: &Session, n: u32, m: u32, r: u32, a: u32) -> Result<ContainmentCertificate> {
    if m == 0 || r == 0 {
        return Err(Error::InvalidArgument("containment needs m, r >= 1".into()));
    }
    let mut cert =
        ContainmentCertificate { n, m, r, a, holds: true, failing_generator: None, degree_criterion_used: false };
    let sym = session.symbolic_power(n, m)?;
    // I_n^r is generated in the single degree r (n + 1)
    let omega_r = r * (n + 1);
    if a > 0 && sym.alpha()? >= a + omega_r && containment_check(session, n, m, r, 0)?.holds {
        cert.degree_criterion_used = true;
        return Ok(cert);
    }
    let target = session.containment_target(n, r, a)?;
    let target_alpha = a + omega_r;
    for g in canonical_generators(&sym)? {
        let below = g.degree().unwrap() < target_alpha;
        if below || !target.contains(&g)? {
            cert.holds = false;
            cert.failing_generator = Some(g.to_string());
            break;
        }
    }
    Ok(cert)
}

/// `α(I^(m)) / m >= (α(I) + 1) / 2` for every `m <= max_m`.
pub fn chudnovsky_check(session: &Session, n: u32, max_m: u32) -> Result<bool> {
    demailly_check(session, n, 1, max_m)
}

/// `α(I^(k)) / k >= (α(I^(m)) + 1) / (m + 1)` for every `k <= max_k`.
pub fn demailly_check(session: &Session, n: u32, m: u32, max_k: u32) -> Result<bool> {
    if m == 0 || max_k == 0 {
        return Err(Error::InvalidArgument("demailly_check needs m, max_k >= 1".into()));
    }
    let bound = Rational::new(session.symbolic_power(n, m)?.alpha()? as i64 + 1, m as i64 + 1)?;
    for k in 1..=max_k {
        let ratio = Rational::new(session.symbolic_power(n, k)?.alpha()? as i64, k as i64)?;
        if ratio < bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ratios `α(I^(m)) / m` for `m <= max_m` and their running infimum.
pub fn waldschmidt_table(session: &Session, n: u32, max_m: u32) -> Result<WaldschmidtSample> {
    if max_m == 0 {
        return Err(Error::InvalidArgument("waldschmidt_table needs max_m >= 1".into()));
    }
    let mut samples = Vec::new();
    for m in 1..=max_m {
        let alpha = session.symbolic_power(n, m)?.alpha()?;
        samples.push(WaldschmidtPoint { m, alpha, ratio: Rational::new(alpha as i64, m as i64)? });
    }
    let inf_so_far = samples.iter().map(|s| s.ratio.clone()).min().unwrap();
    Ok(WaldschmidtSample { n, samples, inf_so_far, known_value: waldschmidt_constant(n) })
}

/// Containment of `I^(m)` in `I^r` over the grid `m <= max_m`, `r <= max_r`.
pub fn resurgence_scan(session: &Session, n: u32, max_m: u32, max_r: u32) -> Result<ResurgenceScan> {
    if max_m == 0 || max_r == 0 {
        return Err(Error::InvalidArgument("resurgence_scan needs positive bounds".into()));
    }
    let mut cells = Vec::new();
    for m in 1..=max_m {
        for r in 1..=max_r {
            cells.push(ScanCell { m, r, holds: containment_check(session, n, m, r, 0)?.holds });
        }
    }
    let non_containments: Vec<(u32, u32)> = cells.iter().filter(|c| !c.holds).map(|c| (c.m, c.r)).collect();
    let max_ratio = non_containments.iter().map(|&(m, r)| Rational::new(m as i64, r as i64).unwrap()).max();
    Ok(ResurgenceScan { n, cells, non_containments, max_ratio, known_value: resurgence(n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_ideal_invariants() {
        let m = Ideal::maximal();
        assert_eq!(alpha(&m).unwrap(), 1);
        assert_eq!(beta(&m).unwrap(), 1);
        let m2 = m.power(2).unwrap();
        assert_eq!(minimal_generator_degrees(&m2).unwrap(), [2; 6]);
        assert_eq!(alpha(&m.power(5).unwrap()).unwrap(), 5);
    }

    #[test]
    fn fermat_three_generators() {
        let s = Session::new();
        let i = s.fermat(3).unwrap().ideal.clone();
        assert_eq!(minimal_generator_degrees(&i).unwrap(), [4, 4, 4]);
        assert_eq!(omega(&i).unwrap(), 4);
    }

    #[test]
    fn beta_examples() {
        let s = Session::new();
        assert_eq!(beta(&s.symbolic_power(3, 2).unwrap()).unwrap(), 8);
        assert_eq!(beta(&s.symbolic_power(2, 3).unwrap()).unwrap(), 9);
    }

    #[test]
    fn containment_examples() {
        let s = Session::new();
        let c = containment_check(&s, 3, 3, 2, 0).unwrap();
        assert!(!c.holds);
        assert!(c.failing_generator.is_some());
        assert!(containment_check(&s, 3, 4, 2, 2).unwrap().holds);
        assert!(!containment_check(&s, 2, 4, 3, 3).unwrap().holds);
        assert!(containment_check(&s, 2, 3, 2, 1).unwrap().holds);
        assert!(containment_check(&s, 3, 2, 1, 1).unwrap().holds);
        assert!(containment_check(&s, 2, 1, 1, 0).is_ok());
        assert!(containment_check(&s, 2, 0, 1, 0).is_err());
    }

    #[test]
    fn fgh_separates_third_symbolic_from_second_ordinary_power() {
        let s = Session::new();
        let d = s.fermat(3).unwrap();
        let fgh = &(&d.f * &d.g) * &d.h;
        assert!(s.symbolic_power(3, 3).unwrap().contains(&fgh).unwrap());
        assert!(!s.ordinary_power(3, 2).unwrap().contains(&fgh).unwrap());
        let c = containment_check(&s, 3, 3, 2, 0).unwrap();
        let failing = Poly::parse_xyz(c.failing_generator.as_deref().unwrap()).unwrap();
        assert!(!s.ordinary_power(3, 2).unwrap().contains(&failing).unwrap());
    }

    #[test]
    fn degree_criterion_agrees_with_reduction() {
        let s = Session::new();
        let c = containment_check(&s, 3, 2, 1, 1).unwrap();
        assert!(c.degree_criterion_used && c.holds);
        let target = s.containment_target(3, 1, 1).unwrap();
        assert!(s.symbolic_power(3, 2).unwrap().is_subset(&target).unwrap());
    }

    #[test]
    fn conjectured_bounds() {
        let s = Session::new();
        assert!(chudnovsky_check(&s, 2, 6).unwrap());
        assert!(chudnovsky_check(&s, 3, 5).unwrap());
        assert!(demailly_check(&s, 3, 2, 5).unwrap());
        assert!(demailly_check(&s, 2, 1, 6).unwrap());
    }

    #[test]
    fn waldschmidt_samples() {
        let s = Session::new();
        let w = waldschmidt_table(&s, 2, 6).unwrap();
        assert_eq!(w.inf_so_far, Rational::new(5, 2).unwrap());
        assert_eq!(w.samples[3].ratio, Rational::new(5, 2).unwrap());
        assert_eq!(waldschmidt_table(&s, 3, 3).unwrap().inf_so_far, Rational::from_int(3));
        for n in 2..5 {
            assert_eq!(waldschmidt_table(&s, n, 1).unwrap().inf_so_far, Rational::from_int(n as i64 + 1));
        }
        let json = serde_json::to_string(&w.samples[0]).unwrap();
        assert_eq!(json, r#"{"m":1,"alpha":3,"ratio":"3"}"#);
    }

    #[test]
    fn report_json_field_names() {
        let s = Session::new();
        let r = invariant_report(&s, 3, 1, Method::Both, true).unwrap();
        assert_eq!((r.alpha, r.omega, r.beta), (4, Some(4), Some(4)));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["alpha_method"], "both");
        assert_eq!(v["minimal_generator_degrees"], serde_json::json!([4, 4, 4]));
    }
}
