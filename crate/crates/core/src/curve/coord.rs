use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedSub, Zero};

use crate::error::{Error, Result};

/// Exact signed integer usable as a multicurve coordinate.
///
/// Implemented for every type with checked ring arithmetic, so both `i64`
/// (overflow is reported, never wrapped) and `BigInt` qualify.
pub trait Coordinate:
    Clone + Ord + Hash + Debug + Display + FromStr + Zero + From<i32> + CheckedAdd + CheckedSub + Send + Sync
{
}

impl<T> Coordinate for T where
    T: Clone
        + Ord
        + Hash
        + Debug
        + Display
        + FromStr
        + Zero
        + From<i32>
        + CheckedAdd
        + CheckedSub
        + Send
        + Sync
{
}

#[inline]
pub(crate) fn add<T: Coordinate>(x: &T, y: &T) -> Result<T> {
    x.checked_add(y).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub<T: Coordinate>(x: &T, y: &T) -> Result<T> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

/// `max(x, 0)`
#[inline]
pub(crate) fn pos<T: Coordinate>(x: &T) -> T {
    if *x > T::zero() {
        x.clone()
    } else {
        T::zero()
    }
}

/// `min(x, 0)`
#[inline]
pub(crate) fn negpart<T: Coordinate>(x: &T) -> T {
    if *x < T::zero() {
        x.clone()
    } else {
        T::zero()
    }
}

