//! Least degrees of fat-point ideals by linear algebra on vanishing
//! conditions, independent of any Groebner basis computation.

use rayon::prelude::*;

use crate::arith::{CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::fermat::{affine_representative, FatPointScheme};
use crate::linalg;
use crate::poly::Monomial;

/// Rows are indexed by (point, derivative multi-index), columns by the
/// degree-`t` monomials in x, y, z.
#[derive(Clone, Debug)]
pub struct ConditionMatrix {
    pub rows: Vec<Vec<CycloNumber>>,
    pub row_labels: Vec<(usize, [u32; 3])>,
    pub columns: Vec<Monomial>,
}

impl ConditionMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.rows.clone(), self.ncols())
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols() - self.rank()
    }
}

fn multi_indices(order: u32) -> Vec<[u32; 3]> {
    Monomial::all_of_degree(3, order).iter().map(|m| [m.exp(0), m.exp(1), m.exp(2)]).collect()
}

/// `e! / (e - d)!`, or zero when `d > e`.
fn falling(e: u32, d: u32) -> Option<i64> {
    (d <= e).then(|| ((e - d + 1)..=e).map(i64::from).product())
}

/// Condition matrix for forms of degree `t` vanishing to order `m` at each
/// point: one row per point and partial derivative of order exactly
/// `m - 1`, or of every order below `m` when `strict` is set. Points are
/// evaluated on their representative with first nonzero coordinate one.
pub fn build_condition_matrix(scheme: &FatPointScheme, t: u32, strict: bool) -> Result<ConditionMatrix> {
    let m = scheme.multiplicity;
    let columns = Monomial::all_of_degree(3, t);
    let orders: Vec<u32> = if strict { (0..m).collect() } else { vec![m - 1] };
    let deltas: Vec<[u32; 3]> = orders.iter().flat_map(|&o| multi_indices(o)).collect();
    let reps: Vec<[CycloNumber; 3]> = scheme
        .configuration
        .points()
        .iter()
        .map(|p| affine_representative(p).ok_or(Error::InvalidArgument("zero point".into())))
        .collect::<Result<_>>()?;
    let labels: Vec<(usize, [u32; 3])> = (0..reps.len()).flat_map(|i| deltas.iter().map(move |d| (i, *d))).collect();

    // powers[i][k][e] = k-th coordinate of point i raised to e
    let powers: Vec<Vec<Vec<CycloNumber>>> = reps
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| {
                    let mut v = vec![CycloNumber::one(c.field())];
                    for e in 1..=t as usize {
                        let next = &v[e - 1] * c;
                        v.push(next);
                    }
                    v
                })
                .collect()
        })
        .collect();

    let rows: Vec<Vec<CycloNumber>> = labels
        .par_iter()
        .map(|&(i, d)| {
            let pw = &powers[i];
            columns
                .iter()
                .map(|mu| {
                    let e = [mu.exp(0), mu.exp(1), mu.exp(2)];
                    let mut coef = 1i64;
                    for k in 0..3 {
                        match falling(e[k], d[k]) {
                            Some(f) => coef *= f,
                            None => return CycloNumber::zero(pw[0][0].field()),
                        }
                    }
                    let xy = &pw[0][(e[0] - d[0]) as usize] * &pw[1][(e[1] - d[1]) as usize];
                    let mut v = &xy * &pw[2][(e[2] - d[2]) as usize];
                    if coef != 1 {
                        v = v.scale(&Rational::from_int(coef));
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(ConditionMatrix { rows, row_labels: labels, columns })
}

/// Dimension of the space of degree-`t` forms vanishing to order `m` at
/// every point. Negative `t` gives zero; so does `t < m - 1` with at least
/// one point, since a nonzero form of degree `t` has multiplicity at most
/// `t` everywhere.
pub fn fatpoint_dim(scheme: &FatPointScheme, t: i64) -> Result<usize> {
    fatpoint_dim_with(scheme, t, false)
}

pub fn fatpoint_dim_with(scheme: &FatPointScheme, t: i64, strict: bool) -> Result<usize> {
    if t < 0 {
        return Ok(0);
    }
    let t = t as u32;
    if scheme.configuration.is_empty() {
        return Ok(((t + 1) * (t + 2) / 2) as usize);
    }
    if t + 1 < scheme.multiplicity {
        return Ok(0);
    }
    Ok(build_condition_matrix(scheme, t, strict)?.kernel_dim())
}

/// Options for [`alpha_interp_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Largest degree tried; defaults to `m` times the number of points.
    pub cap: Option<u32>,
    pub strict: bool,
}

/// One line of the optional rank trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceLine {
    pub t: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel: usize,
}

impl std::fmt::Display for TraceLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "t={} rows={} cols={} rank={} kernel={}", self.t, self.rows, self.cols, self.rank, self.kernel)
    }
}

/// Least degree of a nonzero form vanishing to order `m` at every point.
pub fn alpha_interp(scheme: &FatPointScheme) -> Result<u32> {
    alpha_interp_with(scheme, ScanOptions::default(), &mut |_| {})
}

pub fn alpha_interp_with(scheme: &FatPointScheme, opts: ScanOptions, trace: &mut dyn FnMut(TraceLine)) -> Result<u32> {
    let m = scheme.multiplicity;
    let npoints = scheme.configuration.len() as u32;
    let cap = opts.cap.unwrap_or(m * npoints.max(1));
    for t in 0..=cap {
        let cols = ((t + 1) * (t + 2) / 2) as usize;
        let line = if npoints > 0 && t + 1 < m {
            TraceLine { t, rows: 0, cols, rank: cols, kernel: 0 }
        } else if npoints == 0 {
            TraceLine { t, rows: 0, cols, rank: 0, kernel: cols }
        } else {
            let mat = build_condition_matrix(scheme, t, opts.strict)?;
            let rank = mat.rank();
            TraceLine { t, rows: mat.nrows(), cols, rank, kernel: cols - rank }
        };
        trace(line);
        if line.kernel > 0 {
            return Ok(t);
        }
    }
    Err(Error::ScanCapExceeded { cap })
}
