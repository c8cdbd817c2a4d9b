//! Exact vectors and the canonical representatives used for fan work.
//!
//! Two vector flavours appear throughout: rational points (`QVec`) and
//! primitive integer directions (`IVec`). Polytopes here live in a
//! hyperplane `x_1 + ... + x_{n+1} = const`, so facet normals are compared
//! modulo the all-ones direction; `canonical_quotient_key` is the
//! deterministic representative of that class.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{Int, Rat};

pub type QVec = Vec<Rat>;
pub type IVec = Vec<Int>;

pub fn dot_qq(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_iq(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_qq(a: &[Rat], b: &[Rat]) -> QVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_qq(a: &[Rat], b: &[Rat]) -> QVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_q(lambda: &Rat, a: &[Rat]) -> QVec {
    a.iter().map(|x| lambda * x).collect()
}

pub fn qvec_from_ints(v: &[i64]) -> QVec {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn ivec_to_q(v: &[Int]) -> QVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// All-ones integer vector.
pub fn ones(len: usize) -> IVec {
    vec![Int::from(1); len]
}

/// Unit rational vector e_i (0-based index).
pub fn unit_q(len: usize, i: usize) -> QVec {
    let mut v = vec![Rat::zero(); len];
    v[i] = Rat::from_integer(Int::from(1));
    v
}

fn gcd_of(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

/// Scales an integer vector to primitive form (divides by the gcd of the
/// absolute values); sign is preserved. Errors on the zero vector.
pub fn primitive_int(v: &[Int]) -> Result<IVec> {
    let g = gcd_of(v);
    if g.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// The unique primitive integer vector that is a positive rational multiple
/// of `v`. Errors on the zero vector.
pub fn primitive_direction(v: &[Rat]) -> Result<IVec> {
    let mut lcm = Int::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: IVec = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitive_int(&ints)
}

/// Deterministic representative of the class of `v` modulo the all-ones
/// direction: subtract the minimum entry, then reduce to primitive form.
/// Errors when `v` is a multiple of the all-ones vector.
pub fn canonical_quotient_key(v: &[Int]) -> Result<IVec> {
    let min = v.iter().min().ok_or(Error::ZeroDirection)?.clone();
    let shifted: IVec = v.iter().map(|x| x - &min).collect();
    if shifted.iter().all(|x| x.is_zero()) {
        return Err(Error::LinealityDirection);
    }
    primitive_int(&shifted)
}

/// True when `v` lies in the all-ones line (all entries equal), including 0.
pub fn is_lineality(v: &[Int]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

pub fn neg_i(v: &[Int]) -> IVec {
    v.iter().map(|x| -x).collect()
}

/// Sum of entries of a rational vector.
pub fn coord_sum(v: &[Rat]) -> Rat {
    v.iter().sum()
}
