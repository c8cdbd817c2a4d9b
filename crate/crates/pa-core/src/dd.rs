//! Exact double description: extreme rays of a pointed rational cone
//! `{ y : <row_i, y> >= 0 }` given by integer inequality rows.
//!
//! This is the single conversion engine behind hull construction, facet
//! enumeration and H-to-V enumeration. Rows are inserted one at a time;
//! ray adjacency uses the combinatorial zero-set test, which is valid for
//! pointed cones. All arithmetic is exact big-integer arithmetic.

use std::cmp::Ordering;
use std::time::Instant;

use num_traits::Zero;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Int;
use crate::vec::{dot_ii, ivec_to_q, primitive_int, IVec};

pub struct DdOutput {
    /// Primitive integer extreme rays, sorted lexicographically.
    pub rays: Vec<IVec>,
    /// For each ray, the set of input rows tight at it.
    pub zero_sets: Vec<Bits>,
}

struct Ray {
    v: IVec,
    zero: Bits,
    /// scratch: dot with the row currently being inserted
    dot: Int,
}

fn honest_zero_set(v: &IVec, rows: &[IVec], processed: &[usize], nrows: usize) -> Bits {
    let mut z = Bits::new(nrows);
    for &r in processed {
        if dot_ii(&rows[r], v).is_zero() {
            z.set(r);
        }
    }
    z
}

/// Computes the extreme rays of the pointed cone `{ y in R^dim : rows y >= 0 }`.
///
/// Errors with `LinealityDirection` when the row rank is deficient (the cone
/// contains a line), and with `Timeout` when a deadline is given and passed.
pub fn extreme_rays(
    dim: usize,
    rows: &[IVec],
    deadline: Option<Instant>,
) -> Result<DdOutput> {
    if dim == 0 {
        return Ok(DdOutput {
            rays: Vec::new(),
            zero_sets: Vec::new(),
        });
    }
    let nrows = rows.len();
    let q_rows: Vec<Vec<crate::rat::Rat>> = rows.iter().map(|r| ivec_to_q(r)).collect();
    let basis_idx = linalg::independent_rows(&q_rows);
    if basis_idx.len() < dim {
        return Err(Error::LinealityDirection);
    }
    let basis_idx = &basis_idx[..dim];
    let basis_mat: Vec<Vec<crate::rat::Rat>> =
        basis_idx.iter().map(|&i| q_rows[i].clone()).collect();
    let inv = linalg::invert(&basis_mat).expect("independent rows invert");

    let mut processed: Vec<usize> = basis_idx.to_vec();
    let mut in_processed = vec![false; nrows];
    for &i in basis_idx {
        in_processed[i] = true;
    }

    // Initial simplicial cone: rays are the columns of the inverse.
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<crate::rat::Rat> = inv.iter().map(|row| row[j].clone()).collect();
            let v = crate::vec::primitive_direction(&col).expect("nonzero inverse column");
            let zero = honest_zero_set(&v, rows, &processed, nrows);
            Ray {
                v,
                zero,
                dot: Int::zero(),
            }
        })
        .collect();

    for r in 0..nrows {
        if in_processed[r] {
            continue;
        }
        if let Some(dl) = deadline {
            if Instant::now() > dl {
                return Err(Error::Timeout);
            }
        }
        let row = &rows[r];
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, ray) in rays.iter_mut().enumerate() {
            ray.dot = dot_ii(row, &ray.v);
            match ray.dot.cmp(&Int::zero()) {
                Ordering::Greater => pos.push(i),
                Ordering::Less => neg.push(i),
                Ordering::Equal => ray.zero.set(r),
            }
        }
        if neg.is_empty() {
            processed.push(r);
            in_processed[r] = true;
            continue;
        }

        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let meet = rays[p].zero.intersection(&rays[n].zero);
                if meet.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, other)| k == p || k == n || !meet.subset_of(&other.zero));
                if !adjacent {
                    continue;
                }
                let dp = rays[p].dot.clone();
                let dn = rays[n].dot.clone();
                let combined: IVec = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(nv, pv)| &dp * nv - &dn * pv)
                    .collect();
                let v = primitive_int(&combined).expect("adjacent combination nonzero");
                let mut zero = honest_zero_set(&v, rows, &processed, nrows);
                zero.set(r);
                new_rays.push(Ray {
                    v,
                    zero,
                    dot: Int::zero(),
                });
            }
        }

        let neg_set: Vec<bool> = {
            let mut s = vec![false; rays.len()];
            for &n in &neg {
                s[n] = true;
            }
            s
        };
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, ray) in rays.into_iter().enumerate() {
            if !neg_set[i] {
                kept.push(ray);
            }
        }
        kept.append(&mut new_rays);
        rays = kept;
        processed.push(r);
        in_processed[r] = true;
    }

    let mut out: Vec<(IVec, Bits)> = rays.into_iter().map(|r| (r.v, r.zero)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    let (rays, zero_sets) = out.into_iter().unzip();
    Ok(DdOutput { rays, zero_sets })
}
