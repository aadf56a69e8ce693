//! Exact integer scalars for the linear-algebra layer.
//!
//! Everything in [`crate::linalg`] is generic over [`IntegerScalar`]. Fixed
//! width types go through checked arithmetic so overflow surfaces as
//! [`Error::Overflow`](crate::Error::Overflow) instead of wrapping;
//! [`num_bigint::BigInt`] never overflows.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait IntegerScalar:
    Clone
    + Debug
    + Display
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + ToPrimitive
    + From<i64>
    + Send
    + Sync
    + 'static
{
    fn add_checked(&self, other: &Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    fn sub_checked(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other).ok_or(Error::Overflow)
    }

    fn mul_checked(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow)
    }

    /// `self - q * other`, the workhorse of every elimination step.
    fn sub_mul_checked(&self, q: &Self, other: &Self) -> Result<Self> {
        self.sub_checked(&q.mul_checked(other)?)
    }

    fn to_i64_checked(&self) -> Result<i64> {
        self.to_i64().ok_or(Error::Overflow)
    }
}

impl IntegerScalar for i64 {}
impl IntegerScalar for i128 {}
impl IntegerScalar for BigInt {}
