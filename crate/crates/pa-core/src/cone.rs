//! Finitely generated rational cones in the quotient of `R^{n+1}` by the
//! all-ones direction.
//!
//! Generators are stored as canonical quotient keys. Computations run in
//! explicit coordinates for the quotient: a class with representative
//! `y` maps to `(y_1 - y_{n+1}, ..., y_n - y_{n+1})`.

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::rat::Int;
use crate::vec::{canonical_quotient_key, is_lineality, ivec_to_q, IVec, QVec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    ambient: usize,
    /// Canonical quotient keys, sorted, irredundant.
    gens: Vec<IVec>,
}

/// Quotient coordinates of a class representative.
fn quot_coords(v: &[Int]) -> IVec {
    let last = &v[v.len() - 1];
    v[..v.len() - 1].iter().map(|x| x - last).collect()
}

/// Class representative from quotient coordinates.
fn unquot(u: &[Int]) -> IVec {
    let mut v = u.to_vec();
    v.push(Int::from(0));
    v
}

impl Cone {
    /// Builds a cone from arbitrary integer representatives. Lineality-class
    /// (zero-class) generators contribute nothing and are dropped; redundant
    /// generators (nonnegative combinations of the others) are removed.
    pub fn from_generators<I>(ambient: usize, gens: I) -> Result<Cone>
    where
        I: IntoIterator<Item = IVec>,
    {
        let mut keys: Vec<IVec> = Vec::new();
        for g in gens {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch);
            }
            if is_lineality(&g) {
                continue;
            }
            let key = canonical_quotient_key(&g)?;
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
        keys.sort();
        // Irredundancy pass: drop any generator lying in the cone of the rest.
        let mut kept: Vec<IVec> = keys.clone();
        let mut i = 0;
        while i < kept.len() {
            let candidate = kept[i].clone();
            let others: Vec<IVec> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            if contains_raw(&others, &candidate) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Cone {
            ambient,
            gens: kept,
        })
    }

    fn from_keys(ambient: usize, mut keys: Vec<IVec>) -> Cone {
        keys.sort();
        keys.dedup();
        Cone {
            ambient,
            gens: keys,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[IVec] {
        &self.gens
    }

    /// Rank of the generator classes in the quotient.
    pub fn dim(&self) -> usize {
        let rows: Vec<QVec> = self
            .gens
            .iter()
            .map(|g| ivec_to_q(&quot_coords(g)))
            .collect();
        linalg::rank(&rows)
    }

    /// Exact membership: true iff `ray` is a nonnegative rational combination
    /// of the generators (as quotient classes). The zero class is always
    /// contained.
    pub fn contains(&self, ray: &[Int]) -> bool {
        if ray.len() != self.ambient || is_lineality(ray) {
            return ray.len() == self.ambient;
        }
        contains_raw(&self.gens, ray)
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Inequality description of a full-dimensional cone: rows `h` with the
    /// cone equal to `{ y : <h, phi(y)> >= 0 }` in quotient coordinates.
    fn dual_rows(&self) -> Result<Vec<IVec>> {
        let n = self.ambient - 1;
        let rows: Vec<IVec> = self.gens.iter().map(|g| quot_coords(g)).collect();
        let out = dd::extreme_rays(n, &rows, None)?;
        Ok(out.rays)
    }

    /// Exact intersection of two full-dimensional cones.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch);
        }
        let n = self.ambient - 1;
        let mut rows = self.dual_rows()?;
        rows.extend(other.dual_rows()?);
        let out = dd::extreme_rays(n, &rows, None)?;
        let keys = out
            .rays
            .iter()
            .map(|u| canonical_quotient_key(&unquot(u)).expect("nonzero ray"))
            .collect();
        Ok(Cone::from_keys(self.ambient, keys))
    }
}

fn contains_raw(gens: &[IVec], ray: &[Int]) -> bool {
    let target = match canonical_quotient_key(ray) {
        Ok(k) => k,
        Err(_) => return true, // zero class
    };
    let cols: Vec<QVec> = gens
        .iter()
        .map(|g| ivec_to_q(&quot_coords(g)))
        .collect();
    let b = ivec_to_q(&quot_coords(&target));
    lp::nonneg_combination_exists(&cols, &b)
}
