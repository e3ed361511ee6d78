//! Exact Gaussian elimination over ℚ.

use num_traits::Zero;

use crate::scalar::Scalar;

/// Row echelon form in place; returns pivot columns.
fn echelon(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::from_integer(1.into()) / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of the matrix whose columns are `columns` (all of equal length).
pub fn rank(columns: &[Vec<Scalar>]) -> usize {
    let Some(first) = columns.first() else { return 0 };
    let nrows = first.len();
    let mut rows: Vec<Vec<Scalar>> = (0..nrows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    echelon(&mut rows, columns.len()).len()
}

/// Some `x` with `Σ x_j columns[j] = target`, if one exists.
pub fn solve(columns: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = columns.len();
    let mut rows: Vec<Vec<Scalar>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = echelon(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}
