//! Coefficient rings.
//!
//! Everything algebraic in this crate (polynomials, matrices, Temperley-Lieb
//! elements) is generic over a [`Coefficient`]. The combinatorial results are
//! integral, so the crate-root aliases fix `BigInt`; `i64`, `i128`, `f64` and
//! `BigRational` also satisfy the bound (fixed-width and float types are only
//! sound where the values are known to stay small).

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::Signed;

pub trait Coefficient:
    Signed + Clone + Neg<Output = Self> + Debug + Display + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Coefficient for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Coefficient for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Coefficient for num_rational::BigRational {
    fn from_i64(v: i64) -> Self {
        num_rational::BigRational::from_integer(BigInt::from(v))
    }
}


impl Coefficient for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}
