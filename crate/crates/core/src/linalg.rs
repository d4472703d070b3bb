//! Dense exact linear algebra over a [`Field`].
//!
//! Pivots are the first nonzero entry in a fixed scan order; no other
//! pivoting heuristic is used, so results are reproducible.

use crate::error::Result;
use crate::scalar::Field;

pub type Matrix<F> = Vec<Vec<F>>;

/// Fraction-free (Bareiss) elimination: rank, and the determinant when the
/// matrix is square and nonsingular.
pub fn bareiss<F: Field>(m: &Matrix<F>) -> Result<(usize, Option<F>)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut prev = F::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let pivot = a[r][c].clone();
        let inv_prev = prev.inv()?;
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = (pivot.clone() * &a[i][j] - lead.clone() * &a[r][j]) * &inv_prev;
                a[i][j] = v;
            }
            a[i][c] = F::zero();
        }
        prev = pivot;
        r += 1;
    }
    let det = if rows == cols && r == rows {
        let d = if rows == 0 { F::one() } else { a[rows - 1][cols - 1].clone() };
        Some(if negate { -d } else { d })
    } else {
        None
    };
    Ok((r, det))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(a: &mut Matrix<F>, ncols: usize) -> Result<Vec<usize>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv()?;
        for j in c..a[r].len() {
            let v = a[r][j].clone() * &inv;
            a[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..a[i].len() {
                    if !a[r][j].is_zero() {
                        let v = a[i][j].clone() - f.clone() * &a[r][j];
                        a[i][j] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Solves M X = B for square M; `None` if M is singular.  B is given by
/// columns and X is returned by columns.
pub fn solve_columns<F: Field>(m: &Matrix<F>, b: &[Vec<F>]) -> Result<Option<Vec<Vec<F>>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Ok(None);
    }
    let mut aug: Matrix<F> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend(b.iter().map(|col| col[i].clone()));
            row
        })
        .collect();
    let piv = rref(&mut aug, n)?;
    if piv.len() < n {
        return Ok(None);
    }
    Ok(Some((0..b.len()).map(|k| (0..n).map(|i| aug[i][n + k].clone()).collect()).collect()))
}

/// A nonzero y with y^T M = 0, if one exists.
pub fn left_kernel_vector<F: Field>(m: &Matrix<F>) -> Result<Option<Vec<F>>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut t: Matrix<F> = (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
    let piv = rref(&mut t, rows)?;
    let Some(free) = (0..rows).find(|c| !piv.contains(c)) else {
        return Ok(None);
    };
    let mut y = vec![F::zero(); rows];
    y[free] = F::one();
    for (r, &pc) in piv.iter().enumerate() {
        y[pc] = -t[r][free].clone();
    }
    Ok(Some(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn m(v: &[&[i64]]) -> Matrix<BigRational> {
        v.iter().map(|r| r.iter().map(|&x| BigRational::from_i64(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[0, 2, 1], &[1, 1, 1], &[2, 0, 3]]);
        let (r, d) = bareiss(&a).unwrap();
        assert_eq!(r, 3);
        assert_eq!(d.unwrap(), BigRational::from_i64(-4));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss(&s).unwrap(), (1, None));
        let y = left_kernel_vector(&s).unwrap().unwrap();
        assert!((y[0].clone() * BigRational::from_i64(1) + y[1].clone() * BigRational::from_i64(2)).is_zero());
        assert!(left_kernel_vector(&a).unwrap().is_none());
    }

    #[test]
    fn multi_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let b = vec![vec![BigRational::from_i64(3), BigRational::from_i64(2)]];
        let x = solve_columns(&a, &b).unwrap().unwrap();
        assert_eq!(x[0], vec![BigRational::from_i64(1), BigRational::from_i64(1)]);
        assert!(solve_columns(&m(&[&[1, 1], &[1, 1]]), &b).unwrap().is_none());
    }
}
