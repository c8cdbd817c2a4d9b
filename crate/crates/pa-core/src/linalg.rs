//! Small dense exact linear algebra over the rationals.
//!
//! Everything here operates on row vectors (`Vec<Rat>`) at desk scale:
//! ambient dimensions stay at or below 6, so plain Gaussian elimination
//! with first-nonzero pivoting is both fast and deterministic.

use num_traits::Zero;

use crate::rat::Rat;
use crate::vec::QVec;

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row. Zero rows are dropped.
pub fn rref(rows: &mut Vec<QVec>) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(pr) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pr);
        let inv = rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..width {
                    let delta = &f * &rows[row][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

pub fn rank(rows: &[QVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Canonical basis of the nullspace `{x : rows * x = 0}`, via the rref
/// free-variable construction. Deterministic given the input.
pub fn nullspace(rows: &[QVec], width: usize) -> Vec<QVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; width];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); width];
        v[free] = Rat::from_integer(1.into());
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A particular solution of `a * x = b` (free variables set to 0), or
/// `None` when the system is inconsistent.
pub fn solve(a: &[QVec], b: &[Rat]) -> Option<QVec> {
    let width = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&width) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); width];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][width].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &[QVec]) -> Option<Vec<QVec>> {
    let n = a.len();
    let mut aug: Vec<QVec> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Indices of a maximal set of linearly independent rows, in input order.
pub fn independent_rows(rows: &[QVec]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<QVec> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut candidate = basis.clone();
        candidate.push(row.clone());
        if rref(&mut candidate).len() > basis.len() {
            basis = candidate;
            chosen.push(i);
        }
    }
    chosen
}
