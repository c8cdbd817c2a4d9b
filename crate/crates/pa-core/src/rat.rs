//! Exact scalars: arbitrary-precision integers and reduced rationals.
//!
//! Rationals cross every external boundary as strings `"p/q"` (or `"p"`
//! when the denominator is 1); no floating point is ever parsed or
//! produced by the kernels.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for small integer constants.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Reduced rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Parses `"p/q"` or `"p"`; rejects anything else (in particular decimals).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    s.parse::<Rat>()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer power of an integer base; exponent must be small and non-negative.
pub fn int_pow(base: i64, exp: u32) -> Int {
    Int::from(base).pow(exp)
}

pub fn rat_is_positive(r: &Rat) -> bool {
    r.is_positive()
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}
