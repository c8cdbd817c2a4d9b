//! Exact rational feasibility of `A x = b, x >= 0` by phase-1 simplex
//! with Bland's rule. Systems here are tiny (cone membership tests).

use num_traits::{Signed, Zero};

use crate::rat::Rat;
use crate::vec::QVec;

/// True iff some `x >= 0` satisfies `sum_j x_j * cols[j] = b`.
pub fn nonneg_combination_exists(cols: &[QVec], b: &[Rat]) -> bool {
    let m = b.len();
    if b.iter().all(|x| x.is_zero()) {
        return true;
    }
    if cols.is_empty() {
        return false;
    }
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == m));

    // Tableau rows: [ A | I | b ] with rows flipped so b >= 0; artificials
    // form the initial basis; minimize the sum of artificials.
    let width = n + m + 1;
    let mut t: Vec<QVec> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = Vec::with_capacity(width);
            for col in cols {
                row.push(if flip { -col[i].clone() } else { col[i].clone() });
            }
            for j in 0..m {
                row.push(if i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                });
            }
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Objective row: cost 1 on artificials, reduced by the initial basis.
    let mut obj = vec![Rat::zero(); width];
    for j in n..n + m {
        obj[j] = Rat::from_integer(1.into());
    }
    for row in &t {
        for j in 0..width {
            obj[j] = &obj[j] - &row[j];
        }
    }

    loop {
        // Bland: entering = smallest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test, ties broken by smallest basis index (Bland).
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((li, _)) = leave else {
            // Unbounded below is impossible for a phase-1 objective; treat
            // defensively as infeasible.
            return false;
        };
        let pivot = t[li][enter].clone();
        for x in t[li].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = t[li].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != li && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
        basis[li] = enter;
    }

    // Feasible iff the optimal artificial total is zero.
    let objective_value: Rat = basis
        .iter()
        .zip(&t)
        .filter(|(b, _)| **b >= n)
        .map(|(_, row)| row[width - 1].clone())
        .sum();
    objective_value.is_zero()
}
