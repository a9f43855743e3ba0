//! Exact linear algebra over [`Scalar`]: fraction-free elimination, rank,
//! kernel bases, determinants and small solves. Matrices are plain
//! `Vec<Vec<Scalar>>` row vectors; sizes here stay well under a hundred.

use crate::scalar::Scalar;

/// Row echelon reduction in place, Bareiss style: each elimination step uses
/// cross-multiplication and exact division by the previous pivot, which keeps
/// intermediate entries as subdeterminants instead of letting numerators and
/// denominators compound.
///
/// Returns the list of pivot column indices (one per nonzero row of the
/// echelon form).
pub fn echelon(mat: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    let mut prev_pivot = Scalar::one();
    for col in 0..cols {
        // find a pivot row
        let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let pivot = mat[row][col].clone();
        for r in 0..rows {
            if r == row || mat[r][col].is_zero() {
                continue;
            }
            // Bareiss step: new = (pivot * entry - coeff * pivot_row_entry) / prev_pivot
            let coeff = mat[r][col].clone();
            for c in 0..cols {
                let t = &(&pivot * &mat[r][c]) - &(&coeff * &mat[row][c]);
                mat[r][c] = &t / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

pub fn rank(mut mat: Vec<Vec<Scalar>>) -> usize {
    echelon(&mut mat).len()
}

/// Exact basis of the right null space { v : M v = 0 }.
/// The dimension is always cols - rank.
pub fn kernel_basis(mut mat: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let cols = mat[0].len();
    let pivots = echelon(&mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![Scalar::zero(); cols];
        v[fc] = Scalar::one();
        // back-substitute pivot coordinates
        for (r, &pc) in pivots.iter().enumerate() {
            // row r: mat[r][pc] * v[pc] + mat[r][fc] * 1 (+ zero free others) = 0
            if !mat[r][fc].is_zero() {
                v[pc] = &(-&mat[r][fc]) / &mat[r][pc];
            }
        }
        basis.push(v);
    }
    basis
}

/// Determinant by fraction-free elimination.
pub fn determinant(mut mat: Vec<Vec<Scalar>>) -> Scalar {
    let n = mat.len();
    if n == 0 {
        return Scalar::one();
    }
    assert!(mat.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let mut sign = Scalar::one();
    let mut prev = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            mat.swap(col, p);
            sign = -sign;
        }
        let pivot = mat[col][col].clone();
        for r in col + 1..n {
            for c in col + 1..n {
                let t = &(&pivot * &mat[r][c]) - &(&mat[r][col] * &mat[col][c]);
                mat[r][c] = &t / &prev;
            }
            mat[r][col] = Scalar::zero();
        }
        prev = pivot;
    }
    &sign * &mat[n - 1][n - 1]
}

/// Solve M x = b exactly, returning None when the system is inconsistent.
/// When the solution space is positive-dimensional an arbitrary member is
/// returned (free coordinates set to zero).
pub fn solve(mat: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = mat.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = mat[0].len();
    let mut aug: Vec<Vec<Scalar>> = mat
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = echelon(&mut aug);
    // inconsistent iff a pivot lands in the augmented column
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = &aug[r][cols] / &aug[r][pc];
    }
    Some(x)
}

/// Column span membership: coefficients lambda with sum lambda_i col_i = target.
pub fn in_column_span(columns: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    if columns.is_empty() {
        return if target.iter().all(Scalar::is_zero) { Some(Vec::new()) } else { None };
    }
    let rows = columns[0].len();
    assert!(columns.iter().all(|c| c.len() == rows));
    assert_eq!(target.len(), rows);
    let mat: Vec<Vec<Scalar>> =
        (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    solve(&mat, target)
}
