//! Affine hulls of exact point sets.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Rat;
use crate::vec::{dot_iq, primitive_direction, sub_qq, IVec, QVec};

/// An irredundant system of equalities `<normal, x> = offset` cutting out
/// the affine hull of a point set, with canonical primitive normals.
pub type Equalities = Vec<(IVec, Rat)>;

/// Dimension of the affine hull plus an irredundant canonical equality
/// system satisfied exactly by every input point.
pub fn affine_hull(points: &[QVec]) -> Result<(usize, Equalities)> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let ambient = first.len();
    if points.iter().any(|p| p.len() != ambient) {
        return Err(Error::DimensionMismatch);
    }
    let diffs: Vec<QVec> = points[1..].iter().map(|p| sub_qq(p, first)).collect();
    let dim = linalg::rank(&diffs);
    let normals = linalg::nullspace(&diffs, ambient);
    let mut eqs = Vec::with_capacity(normals.len());
    for n in &normals {
        let prim = orient_leading_positive(primitive_direction(n)?);
        let offset = dot_iq(&prim, first);
        eqs.push((prim, offset));
    }
    eqs.sort();
    debug_assert!(points
        .iter()
        .all(|p| eqs.iter().all(|(a, b)| &dot_iq(a, p) == b)));
    Ok((dim, eqs))
}

fn orient_leading_positive(mut v: IVec) -> IVec {
    use num_traits::Signed;
    if let Some(first) = v.iter().find(|x| !num_traits::Zero::is_zero(*x)) {
        if first.is_negative() {
            v = v.iter().map(|x| -x).collect();
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use crate::vec::{ivec, qvec_from_ints};

    #[test]
    fn single_point_has_three_equalities() {
        let (dim, eqs) = affine_hull(&[qvec_from_ints(&[0, 0, 0])]).unwrap();
        assert_eq!(dim, 0);
        assert_eq!(eqs.len(), 3);
    }

    #[test]
    fn trapezoid_plane() {
        // Fig-style trapezoid A(1,3,1) B(3,1,1) C(2,1,2) D(1,2,2): x1+x2+x3 = 5.
        let pts = vec![
            qvec_from_ints(&[1, 3, 1]),
            qvec_from_ints(&[3, 1, 1]),
            qvec_from_ints(&[2, 1, 2]),
            qvec_from_ints(&[1, 2, 2]),
        ];
        let (dim, eqs) = affine_hull(&pts).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(eqs, vec![(ivec(&[1, 1, 1]), rat_int(5))]);
    }

    #[test]
    fn mixed_dimensions_error() {
        assert!(matches!(
            affine_hull(&[qvec_from_ints(&[1, 2]), qvec_from_ints(&[1, 2, 3])]),
            Err(Error::DimensionMismatch)
        ));
    }
}
