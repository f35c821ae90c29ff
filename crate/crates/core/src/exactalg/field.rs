use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational with reduced numerator/denominator.
pub type Rational = BigRational;

/// An exact field usable as the scalar of [`Matrix`](super::Matrix).
///
/// Elements may carry a representation context (the conductor of a
/// cyclotomic number). `zero_like` and `one_like` produce constants in the
/// same context as `self`, so that freshly created entries compare equal to
/// computed ones.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inverse(&self) -> Result<Self>;

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn from_integer_like(&self, k: i64) -> Self {
        let mut acc = self.zero_like();
        let unit = if k < 0 { -self.one_like() } else { self.one_like() };
        for _ in 0..k.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }
}

impl Field for Rational {
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn from_integer_like(&self, k: i64) -> Self {
        Rational::from_integer(BigInt::from(k))
    }
}
