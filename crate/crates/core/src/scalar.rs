//! Scalar abstractions.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::ToBigInt;
use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer: `i64`, `i128` or `BigInt`.
///
/// Machine-width instantiations are only sound when the caller has bounded
/// the entries; overflow is not checked.
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + ToBigInt + Send + Sync
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + Send
        + Sync
{
}

/// Floating point: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Sign with `sgn(0) = 0`.
pub fn sgn<T: ExactInt>(x: &T) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Lossy conversion of an exact integer to a float.
pub fn to_real<T: ExactInt, F: Real>(x: &T) -> F {
    F::from_f64(x.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
}
