//! Numeric abstraction for transition weights and exact random-walk quantities.

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, NumAssignOps, Signed, ToPrimitive};

/// Scalar type the graph weights and the exact engine are computed in.
///
/// Floating point types clamp probability mass below [`Scalar::drift_floor`] to
/// zero and accept row sums within [`Scalar::row_tolerance`]; the rational
/// implementation is exact and uses zero for both.
pub trait Scalar:
    Num
    + NumAssignOps
    + FromPrimitive
    + ToPrimitive
    + Signed
    + PartialOrd
    + Copy
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Mass below this magnitude is flushed to zero during propagation.
    fn drift_floor() -> Self;

    /// Allowed deviation of a stored row sum from one.
    fn row_tolerance() -> Self;

    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count representable in scalar")
    }

    fn from_real(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("real representable in scalar")
    }

    fn to_real(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn flush(self) -> Self {
        if self.abs() < Self::drift_floor() {
            Self::zero()
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn drift_floor() -> Self {
        1e-15
    }

    fn row_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn drift_floor() -> Self {
        1e-15
    }

    // single precision cannot hold rows to 1e-9
    fn row_tolerance() -> Self {
        1e-5
    }
}

impl Scalar for Rational64 {
    fn drift_floor() -> Self {
        Rational64::from_integer(0)
    }

    fn row_tolerance() -> Self {
        Rational64::from_integer(0)
    }

    #[inline]
    fn flush(self) -> Self {
        self
    }
}

/// Ceiling of a positive real that is meant to be an integer-valued bound,
/// ignoring representation error in the last few ulps.
pub(crate) fn ceil_bound(x: f64) -> u64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest as u64
    } else {
        x.ceil() as u64
    }
}
