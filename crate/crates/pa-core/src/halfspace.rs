//! Half-spaces `{ x : <normal, x> >= offset }` with primitive integer
//! normals. Following the inequality convention, the outward normal of the
//! half-space is the negated stored normal.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{Int, Rat};
use crate::vec::{canonical_quotient_key, dot_iq, neg_i, primitive_int, IVec, QVec};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Halfspace {
    /// Primitive inward normal: the polytope side satisfies `<normal, x> >= offset`.
    pub normal: IVec,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: IVec, offset: Rat) -> Result<Self> {
        if normal.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        let prim = primitive_int(&normal)?;
        if prim != normal {
            return Err(Error::InvalidParameter(
                "halfspace normal must be primitive".into(),
            ));
        }
        Ok(Halfspace { normal, offset })
    }

    /// Primitive renormalisation: accepts any nonzero integer normal and a
    /// matching offset, scaling both so the normal becomes primitive.
    pub fn reduced(normal: IVec, offset: Rat) -> Result<Self> {
        if normal.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        let prim = primitive_int(&normal)?;
        let scale = first_ratio(&normal, &prim);
        Ok(Halfspace {
            normal: prim,
            offset: offset / scale,
        })
    }

    pub fn eval(&self, x: &QVec) -> Rat {
        dot_iq(&self.normal, x) - &self.offset
    }

    pub fn contains(&self, x: &QVec) -> bool {
        !self.eval(x).is_negative()
    }

    /// Canonical quotient key of the outward normal, for fan comparisons of
    /// polytopes living in a `sum x_i = const` hyperplane.
    pub fn outward_key(&self) -> Result<IVec> {
        canonical_quotient_key(&neg_i(&self.normal))
    }
}

fn first_ratio(orig: &[Int], prim: &[Int]) -> Rat {
    let i = orig
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero normal");
    Rat::new(orig[i].clone(), prim[i].clone())
}

use num_traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::vec::{ivec, qvec_from_ints};

    #[test]
    fn reduced_scales_offset() {
        let h = Halfspace::reduced(ivec(&[2, 4, 0]), rat_int(6)).unwrap();
        assert_eq!(h.normal, ivec(&[1, 2, 0]));
        assert_eq!(h.offset, rat_int(3));
        assert!(h.contains(&qvec_from_ints(&[3, 0, 7])));
        assert!(!h.contains(&qvec_from_ints(&[0, 1, 0])));
        assert_eq!(h.eval(&qvec_from_ints(&[1, 1, 1])), rat_int(0));
    }

    #[test]
    fn negative_scale_flips_nothing() {
        let h = Halfspace::reduced(ivec(&[-2, 0]), rat(-5, 1)).unwrap();
        assert_eq!(h.normal, ivec(&[-1, 0]));
        assert_eq!(h.offset, rat(-5, 2));
    }
}
