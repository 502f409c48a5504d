//! Scalar traits shared by every module.
//!
//! Exact code is generic over [`Int`], which is implemented for the signed
//! primitive integers and for [`BigInt`]. Modular exponentiation and
//! primality always run in arbitrary precision, so fixed-width
//! instantiations stay correct as long as the *inputs and results* fit.
//! The crate-root aliases pick [`BigInt`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer scalar.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + TryFrom<BigInt>
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a small literal. Panics only if `v` does not
    /// fit the scalar, which never happens for the constants used in this crate.
    fn lit(v: i64) -> Self {
        Self::from_i64(v).expect("literal out of range for scalar type")
    }

    fn to_big(&self) -> BigInt {
        self.clone().into()
    }

    /// Narrow an arbitrary-precision value back into `Self`.
    fn from_big(v: BigInt) -> Option<Self> {
        Self::try_from(v).ok()
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + TryFrom<BigInt>
        + Send
        + Sync
        + 'static
{
}

/// Binary floating point used by the hyperbolic filling bounds.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display {}

impl Real for f32 {}
impl Real for f64 {}

/// Exact rational with reduced, positive denominator.
pub type Rational<T> = Ratio<T>;

/// Formats a rational as `num/den`, including integers (`3/1`).
pub fn fmt_ratio<T: Int>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
