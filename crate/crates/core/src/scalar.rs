//! Exact scalar fields used by the localization oracle.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// An exact field of characteristic zero.
///
/// Implemented for arbitrary-precision rationals and for `Ratio<i128>`. The
/// latter is faster but can overflow on large systems or large evaluation
/// points; it panics rather than returning a wrong value.
pub trait ExactScalar:
    Clone + Debug + Display + PartialEq + Num + Signed + Send + Sync + 'static
{
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    /// `Some(k)` iff the value is the integer `k` and fits in an `i64`.
    fn to_exact_i64(&self) -> Option<i64>;
}

impl ExactScalar for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_exact_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl ExactScalar for Ratio<i128> {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer as i128, denom as i128)
    }

    fn to_exact_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.to_integer()).ok()
        } else {
            None
        }
    }
}
