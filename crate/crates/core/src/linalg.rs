//! Exact dense linear algebra over [`Scalar`].
//!
//! Elimination is fraction free: rational rows are first scaled to integer
//! rows, then every update is `(p * a_ij - a_ic * a_rj) / p_prev`, which
//! keeps integer inputs integral. Pivot rows are normalized at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reduced row echelon form plus the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

fn integerize(row: &mut [Scalar]) {
    if !row.iter().all(Scalar::is_rational) {
        return;
    }
    let mut l = BigInt::one();
    for c in row.iter() {
        if let Some(q) = c.as_rational() {
            l = l.lcm(q.denom());
        }
    }
    if !l.is_one() {
        let s = Scalar::from(l);
        for c in row.iter_mut() {
            *c = &*c * &s;
        }
    }
}

/// Row reduces `a`, choosing pivots only among the first `pivot_cols`
/// columns.
pub fn row_reduce(mut a: Vec<Vec<Scalar>>, pivot_cols: usize) -> Echelon {
    for row in a.iter_mut() {
        integerize(row);
    }
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = Scalar::one();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..pivot_cols.min(ncols) {
        let Some(p) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let piv = a[rank][c].clone();
        let prow = a[rank].clone();
        let prev_inv = prev.try_inv().expect("previous pivot is nonzero");
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank {
                continue;
            }
            let f = row[c].clone();
            for (x, pj) in row.iter_mut().zip(&prow) {
                *x = &(&(&piv * &*x) - &(&f * pj)) * &prev_inv;
            }
        }
        prev = piv;
        pivots.push(c);
        rank += 1;
    }
    for (r, &c) in pivots.iter().enumerate() {
        let inv = a[r][c].try_inv().expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
    }
    Echelon { rows: a, pivots }
}

pub fn rank(a: &[Vec<Scalar>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    row_reduce(a.to_vec(), cols).pivots.len()
}

/// Basis of `{v : a v = 0}` for an `m x cols` matrix. Each basis vector has
/// a 1 in its own free column and 0 in the other free columns.
pub fn kernel(a: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    if a.is_empty() {
        return (0..cols)
            .map(|j| (0..cols).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
    }
    let ech = row_reduce(a.to_vec(), cols);
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![Scalar::zero(); cols];
            v[j] = Scalar::one();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -&ech.rows[r][j];
            }
            v
        })
        .collect()
}

/// The unique solution of `a x = b`. Errors with [`Error::Inconsistent`]
/// when no solution exists and [`Error::Domain`] when it is not unique.
pub fn solve_unique(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Vec<Scalar>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = row_reduce(aug, n);
    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    if rank < n {
        return Err(Error::Domain(format!("system has a {}-dimensional solution space", n - rank)));
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.rows[r][n].clone();
    }
    Ok(x)
}
