//! Fermat ideals, their point configurations, symbolic powers and the
//! explicit low-degree elements of those powers.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use crate::arith::{CycloField, CycloNumber, Rational, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{DiskCache, Env, Ideal};
use crate::poly::{parse_cyclo, Monomial, Poly, Ring};

/// The ideal `I_n = (x f, y g, z h)` with `f = y^n - z^n`, `g = z^n - x^n`,
/// `h = x^n - y^n`, together with its decomposition
/// `I_n = K ∩ (x,y) ∩ (y,z) ∩ (z,x)`.
#[derive(Clone, Debug)]
pub struct FermatData {
    pub n: u32,
    pub ideal: Ideal,
    pub f: Poly<Rational>,
    pub g: Poly<Rational>,
    pub h: Poly<Rational>,
    /// `(f, g)`; for `n = 2` the generators are `x^2 - y^2, y^2 - z^2`.
    pub k: Ideal,
    /// `(x,y)`, `(y,z)`, `(z,x)`.
    pub coordinate_ideals: [Ideal; 3],
}

fn binomial(a: usize, b: usize, n: u32) -> Poly<Rational> {
    let ring = Ring::xyz();
    Poly::from_terms(ring, [(Monomial::var(a, n), Rational::ONE), (Monomial::var(b, n), Rational::from_int(-1))])
}

fn var(i: usize) -> Poly<Rational> {
    Poly::var(Ring::xyz(), i)
}

pub fn fermat_ideal(n: u32) -> Result<FermatData> {
    fermat_ideal_in(n, Env::default())
}

pub fn fermat_ideal_in(n: u32, env: Env) -> Result<FermatData> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Fermat ideals need n >= 2, got {n}")));
    }
    let f = binomial(1, 2, n);
    let g = binomial(2, 0, n);
    let h = binomial(0, 1, n);
    let ideal = Ideal::with_env([&var(0) * &f, &var(1) * &g, &var(2) * &h], env.clone())?;
    let k = if n == 2 {
        Ideal::with_env([binomial(0, 1, 2), binomial(1, 2, 2)], env.clone())?
    } else {
        Ideal::with_env([f.clone(), g.clone()], env.clone())?
    };
    let coord = |i, j| Ideal::coordinate(i, j).map(|c| c.in_env(env.clone()));
    Ok(FermatData { n, ideal, f, g, h, k, coordinate_ideals: [coord(0, 1)?, coord(1, 2)?, coord(2, 0)?] })
}

impl FermatData {
    /// `K^m ∩ (x,y)^m ∩ (y,z)^m ∩ (z,x)^m`. The three monomial factors are
    /// intersected termwise, leaving one elimination.
    pub fn symbolic_power(&self, m: u32) -> Result<Ideal> {
        if m == 0 {
            return Err(Error::InvalidArgument("symbolic powers start at m = 1".into()));
        }
        let [a, b, c] = &self.coordinate_ideals;
        let monomial_part = a.power(m)?.intersect(&b.power(m)?)?.intersect(&c.power(m)?)?;
        let full = self.k.power(m)?.intersect_by_elimination(&monomial_part)?;
        if m == 1 {
            if !full.equals(&self.ideal)? {
                return Err(Error::SelfCheck(format!("I_{} differs from its decomposition", self.n)));
            }
            return Ok(self.ideal.clone());
        }
        Ok(full)
    }

    /// Membership in `I_n^(m)` read off the decomposition: Groebner
    /// membership in `K^m`, termwise tests for the coordinate powers.
    pub fn in_symbolic_power(&self, p: &Poly<Rational>, m: u32) -> Result<bool> {
        let pairs = [(0, 1), (1, 2), (2, 0)];
        let coordinate_ok = p.terms().iter().all(|(t, _)| pairs.iter().all(|&(i, j)| t.exp(i) + t.exp(j) >= m));
        Ok(coordinate_ok && self.k.power(m)?.contains(p)?)
    }
}

/// Projective points over Q(zeta_conductor).
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration {
    points: Vec<[CycloNumber; 3]>,
    conductor: u32,
}

impl PointConfiguration {
    /// Rejects zero vectors and repeated points (up to scaling).
    pub fn new(points: Vec<[CycloNumber; 3]>, conductor: u32) -> Result<Self> {
        Self::checked(points, conductor)
            .map_err(|(i, msg)| Error::InvalidArgument(format!("point {}: {msg}", i + 1)))?
    }

    /// Like [`PointConfiguration::new`], reporting the index of an offending
    /// point separately.
    fn checked(points: Vec<[CycloNumber; 3]>, conductor: u32) -> std::result::Result<Result<Self>, (usize, String)> {
        let field = match CycloField::new(conductor) {
            Ok(f) => f,
            Err(e) => return Ok(Err(e)),
        };
        let mut seen: Vec<[CycloNumber; 3]> = Vec::new();
        let mut out = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            let lifted: Result<Vec<CycloNumber>> = p.iter().map(|c| c.to_cyclo(&field)).collect();
            let p: [CycloNumber; 3] = match lifted {
                Ok(v) => v.try_into().expect("three coordinates"),
                Err(e) => return Err((i, e.to_string())),
            };
            let Some(rep) = affine_representative(&p) else {
                return Err((i, "the zero vector is not a point".into()));
            };
            if seen.contains(&rep) {
                return Err((i, "repeats an earlier point".into()));
            }
            seen.push(rep);
            out.push(p);
        }
        Ok(Ok(PointConfiguration { points: out, conductor }))
    }

    pub fn points(&self) -> &[[CycloNumber; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Parses the points file format:
    ///
    /// ```text
    /// # three points on a line
    /// conductor: 1
    /// [1 : 0 : 0]
    /// 0, 1, 0
    /// 1 : 1 : 0
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::PointsFile { line, message };
        let mut conductor = None;
        let mut field = None;
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let Some(field) = &field else {
                let value = body
                    .strip_prefix("conductor:")
                    .ok_or_else(|| err(line, "expected header `conductor: n`".into()))?;
                let n: u32 =
                    value.trim().parse().map_err(|_| err(line, format!("bad conductor {:?}", value.trim())))?;
                field = Some(CycloField::new(n).map_err(|e| err(line, e.to_string()))?);
                conductor = Some(n);
                continue;
            };
            let inner = body.strip_prefix('[').map_or(Some(body), |b| b.strip_suffix(']'));
            let inner = inner.ok_or_else(|| err(line, "unbalanced brackets".into()))?;
            let coords: Vec<&str> = inner.split([':', ',']).collect();
            if coords.len() != 3 {
                return Err(err(line, format!("expected 3 coordinates, found {}", coords.len())));
            }
            let mut p = Vec::with_capacity(3);
            for c in coords {
                p.push(parse_cyclo(c.trim(), field).map_err(|e| err(line, e.to_string()))?);
            }
            points.push((line, [p[0].clone(), p[1].clone(), p[2].clone()]));
        }
        let conductor = conductor.ok_or_else(|| err(1, "missing header `conductor: n`".into()))?;
        let lines: Vec<usize> = points.iter().map(|(l, _)| *l).collect();
        Self::checked(points.into_iter().map(|(_, p)| p).collect(), conductor).map_err(|(i, msg)| err(lines[i], msg))?
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// The representative whose first nonzero coordinate is one.
pub fn affine_representative(p: &[CycloNumber; 3]) -> Option<[CycloNumber; 3]> {
    let lead = p.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv().ok()?;
    Some([&p[0] * &inv, &p[1] * &inv, &p[2] * &inv])
}

/// The `n^2 + 3` points cut out by `I_n`: the coordinate points and
/// `[1 : zeta^a : zeta^b]` for a primitive `n`-th root of unity zeta.
pub fn fermat_points(n: u32) -> Result<PointConfiguration> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Fermat points need n >= 2, got {n}")));
    }
    let field = CycloField::new(n)?;
    let zero = CycloNumber::zero(&field);
    let one = CycloNumber::one(&field);
    let mut points = vec![
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), one.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()],
    ];
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            points.push([one.clone(), CycloNumber::root_power(&field, a), CycloNumber::root_power(&field, b)]);
        }
    }
    PointConfiguration::new(points, n)
}

/// Uniform multiplicity `m` on every point of a configuration.
#[derive(Clone, Debug)]
pub struct FatPointScheme {
    pub configuration: PointConfiguration,
    pub multiplicity: u32,
}

impl FatPointScheme {
    pub fn new(configuration: PointConfiguration, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
        }
        Ok(FatPointScheme { configuration, multiplicity })
    }
}

/// Least degree of `I_n^(m)` as tabulated for Fermat configurations.
pub fn predicted_alpha(n: u32, m: u32) -> Option<u32> {
    if n < 2 || m == 0 {
        return None;
    }
    Some(match (n, m) {
        (_, 1) => n + 1,
        (_, 2) => 2 * (n + 1),
        (2, m) if m % 2 == 0 => 5 * (m / 2),
        (2, m) => 5 * (m / 2) + 3,
        (3, m) => match m % 3 {
            0 => 3 * m,
            1 => 9 * (m / 3) + 4,
            _ => 9 * (m / 3) + 8,
        },
        (4, 5) => 21,
        (_, m) => n * m,
    })
}

/// Waldschmidt constant of `I_n`: `5/2` for `n = 2`, `n` otherwise.
pub fn waldschmidt_constant(n: u32) -> Rational {
    if n == 2 {
        Rational::new(5, 2).unwrap()
    } else {
        Rational::from_int(n as i64)
    }
}

/// Resurgence of `I_n`: `6/5` for `n = 2`, `3/2` otherwise.
pub fn resurgence(n: u32) -> Rational {
    if n == 2 {
        Rational::new(6, 5).unwrap()
    } else {
        Rational::new(3, 2).unwrap()
    }
}

fn product(factors: &[(&Poly<Rational>, u32)]) -> Poly<Rational> {
    let mut acc = Poly::constant(Ring::xyz(), Rational::ONE);
    for (p, e) in factors {
        if *e > 0 {
            acc = &acc * &p.pow(*e).expect("same ring");
        }
    }
    acc
}

/// An explicit element of `I_n^(m)` of least degree, when one of the known
/// constructions covers `(n, m)`.
pub fn witness(n: u32, m: u32) -> Option<Poly<Rational>> {
    if n < 2 || m == 0 {
        return None;
    }
    let (x, y, z) = (var(0), var(1), var(2));
    let f = binomial(1, 2, n);
    let g = binomial(2, 0, n);
    let h = binomial(0, 1, n);
    if n == 2 {
        let (a, b, c) = (binomial(0, 1, 2), binomial(1, 2, 2), binomial(2, 0, 2));
        let k = m / 4;
        return match m % 4 {
            0 => Some(product(&[(&a, 2 * k), (&b, k), (&c, k), (&z, 2 * k)])),
            1 => Some(product(&[(&a, 2 * k + 1), (&b, k), (&c, k), (&z, 2 * k + 1)])),
            2 if k == 0 => Some(product(&[(&(&x * &f), 2)])),
            2 => Some(product(&[(&a, 2 * k), (&b, k + 1), (&c, k + 1), (&x, 1), (&y, 1), (&z, 2 * k - 1)])),
            _ => Some(product(&[(&a, 2 * k + 1), (&b, k + 1), (&c, k + 1), (&x, 1), (&y, 1), (&z, 2 * k)])),
        };
    }
    match m {
        1 => return Some(&x * &f),
        2 => return Some(product(&[(&(&x * &f), 2)])),
        _ => {}
    }
    if n == 3 {
        return (m % 3 == 1).then(|| {
            let k = m / 3;
            product(&[(&f, k), (&g, k), (&h, k + 1), (&z, 1)])
        });
    }
    if n == 4 && m == 5 {
        return Some(product(&[(&z, 1), (&f, 2), (&g, 1), (&h, 2)]));
    }
    if m <= n {
        return Some(product(&[(&f, m - 2), (&g, 1), (&h, 1)]));
    }
    let k = m.div_ceil(n);
    let a = k * n - m;
    let e = (k * (n - 3)).checked_sub(a)?;
    Some(product(&[(&f, k + e), (&g, k), (&h, k)]))
}

/// Outcome of checking a witness against the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WitnessReport {
    pub n: u32,
    pub m: u32,
    pub witness: String,
    pub degree: u32,
    pub predicted: u32,
    pub in_k_power: bool,
    /// Membership in `(x, y)^m`, `(y, z)^m`, `(z, x)^m`.
    pub in_coordinate_powers: [bool; 3],
    pub verified: bool,
}

pub fn witness_report(data: &FermatData, m: u32) -> Result<Option<WitnessReport>> {
    let n = data.n;
    let Some(w) = witness(n, m) else { return Ok(None) };
    let predicted = predicted_alpha(n, m).expect("n >= 2, m >= 1");
    let degree = w.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(w.to_string()))?;
    let pairs = [(0, 1), (1, 2), (2, 0)];
    let in_coordinate_powers = pairs.map(|(i, j)| w.terms().iter().all(|(t, _)| t.exp(i) + t.exp(j) >= m));
    let in_k_power = data.k.power(m)?.contains(&w)?;
    Ok(Some(WitnessReport {
        n,
        m,
        witness: w.to_string(),
        degree,
        predicted,
        in_k_power,
        in_coordinate_powers,
        verified: in_k_power && in_coordinate_powers.iter().all(|&b| b) && degree == predicted,
    }))
}

/// Whether the witness for `(n, m)` lies in `I_n^(m)` and has the predicted
/// least degree. Uncovered pairs are an error.
pub fn verify_witness(n: u32, m: u32) -> Result<bool> {
    let data = fermat_ideal(n)?;
    witness_report(&data, m)?
        .map(|r| r.verified)
        .ok_or_else(|| Error::InvalidArgument(format!("no witness construction for n = {n}, m = {m}")))
}

/// Memoizes Fermat data, symbolic powers and ordinary powers across queries.
#[derive(Default)]
pub struct Session {
    env: Env,
    fermat: Mutex<HashMap<u32, Arc<FermatData>>>,
    symbolic: Mutex<HashMap<(u32, u32), Ideal>>,
    ordinary: Mutex<HashMap<(u32, u32), Ideal>>,
    targets: Mutex<HashMap<(u32, u32, u32), Ideal>>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_env(env: Env) -> Self {
        Session { env, ..Default::default() }
    }

    /// Session using the disk cache named by `FERMAT_CACHE_DIR`, if any.
    pub fn from_env() -> Result<Self> {
        let mut env = Env::new();
        if let Some(cache) = DiskCache::from_env()? {
            env = env.with_cache(Arc::new(cache));
        }
        Ok(Self::with_env(env))
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn fermat(&self, n: u32) -> Result<Arc<FermatData>> {
        if let Some(d) = self.fermat.lock().unwrap().get(&n) {
            return Ok(d.clone());
        }
        let d = Arc::new(fermat_ideal_in(n, self.env.clone())?);
        Ok(self.fermat.lock().unwrap().entry(n).or_insert(d).clone())
    }

    pub fn symbolic_power(&self, n: u32, m: u32) -> Result<Ideal> {
        if let Some(i) = self.symbolic.lock().unwrap().get(&(n, m)) {
            return Ok(i.clone());
        }
        let i = self.fermat(n)?.symbolic_power(m)?;
        Ok(self.symbolic.lock().unwrap().entry((n, m)).or_insert(i).clone())
    }

    /// The ordinary power `I_n^r`.
    pub fn ordinary_power(&self, n: u32, r: u32) -> Result<Ideal> {
        if let Some(i) = self.ordinary.lock().unwrap().get(&(n, r)) {
            return Ok(i.clone());
        }
        let i = self.fermat(n)?.ideal.power(r)?;
        Ok(self.ordinary.lock().unwrap().entry((n, r)).or_insert(i).clone())
    }

    /// `m^a I_n^r`, with `m = (x, y, z)`.
    pub fn containment_target(&self, n: u32, r: u32, a: u32) -> Result<Ideal> {
        if a == 0 {
            return self.ordinary_power(n, r);
        }
        if let Some(i) = self.targets.lock().unwrap().get(&(n, r, a)) {
            return Ok(i.clone());
        }
        let ma = Ideal::maximal().in_env(self.env.clone()).power(a)?;
        let i = ma.product(&self.ordinary_power(n, r)?)?;
        Ok(self.targets.lock().unwrap().entry((n, r, a)).or_insert(i).clone())
    }
}
