//! Exact Gaussian elimination over any [`Scalar`] field.

use crate::arith::{Rational, Scalar};
use crate::poly::{Monomial, Poly, Ring};

/// Result of row reduction: the nonzero rows of the echelon form and the
/// pivot column of each.
#[derive(Debug, Clone)]
pub struct Echelon<C> {
    pub rows: Vec<Vec<C>>,
    pub pivots: Vec<usize>,
}

impl<C> Echelon<C> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduces `rows` (each of length `ncols`). Pivots are chosen per
/// column among the remaining rows, preferring the row with the fewest
/// nonzero entries and then the cheapest pivot entry. With `reduced`, entries
/// above each pivot are cleared too and pivots are scaled to one.
pub fn row_reduce<C: Scalar>(mut rows: Vec<Vec<C>>, ncols: usize, reduced: bool) -> Echelon<C> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let best = (rank..rows.len()).filter(|&r| !rows[r][col].is_zero()).min_by_key(|&r| {
            let nnz = rows[r][col..].iter().filter(|c| !c.is_zero()).count();
            (nnz, rows[r][col].weight())
        });
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in rows[rank][col..].iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[rank]);
        let nz: Vec<usize> = (col..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let start = if reduced { 0 } else { rank + 1 };
        for (r, row) in rows.iter_mut().enumerate().skip(start) {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
        }
        rows[rank] = pivot_row;
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { rows, pivots }
}

pub fn rank<C: Scalar>(rows: Vec<Vec<C>>, ncols: usize) -> usize {
    row_reduce(rows, ncols, false).rank()
}

/// Reduced echelon basis of the span of homogeneous degree-`t` polynomials.
/// Columns follow the ring order, so each output polynomial is monic with a
/// distinct leading monomial.
pub fn reduce_polys<C: Scalar>(ring: Ring, t: u32, polys: Vec<Poly<C>>) -> Vec<Poly<C>> {
    let Some(zero) = polys.iter().find_map(|p| p.leading_coeff()).map(|c| C::from_rational_like(c, Rational::ZERO))
    else {
        return Vec::new();
    };
    let mut monos = Monomial::all_of_degree(ring.nvars(), t);
    monos.sort_unstable_by_key(|m| std::cmp::Reverse(ring.key(m)));
    let index: std::collections::HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let rows: Vec<Vec<C>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![zero.clone(); monos.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    let ech = row_reduce(rows, monos.len(), true);
    ech.rows
        .into_iter()
        .map(|row| {
            let terms = row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (monos[j], c)).collect();
            Poly::from_sorted_unchecked(ring, terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(mat(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(rank(mat(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]), 3), 2);
        assert_eq!(rank(mat(&[&[0, 0], &[0, 0]]), 2), 0);
        assert_eq!(rank(Vec::<Vec<Rational>>::new(), 4), 0);
    }

    #[test]
    fn reduced_form_is_canonical() {
        let e = row_reduce(mat(&[&[2, 4, 6], &[1, 1, 1]]), 3, true);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rows, mat(&[&[1, 0, -1], &[0, 1, 2]]));
    }

    #[test]
    fn three_linear_forms_span_a_plane() {
        let ring = Ring::xyz();
        let polys = ["x - y", "y - z", "z - x"].map(|s| Poly::parse_xyz(s).unwrap()).to_vec();
        let basis = reduce_polys(ring, 1, polys);
        let text: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["x - z", "y - z"]);
    }
}
