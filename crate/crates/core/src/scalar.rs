//! Numeric abstractions shared by the geometry, counting and potential code.
//!
//! Counting is exact and generic over [`Count`]; fixed-width integers report
//! overflow instead of wrapping. Coordinates and potentials are generic over
//! [`Scalar`], which covers floats and exact rationals alike.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Num, One, Zero};

/// Non-negative integer type used for blocker and triangulation counts.
pub trait Count:
    Clone + Ord + Debug + std::fmt::Display + Zero + One + CheckedAdd + CheckedMul + FromPrimitive
{
    fn from_count(v: usize) -> Option<Self> {
        Self::from_usize(v)
    }
}

impl<T> Count for T where
    T: Clone + Ord + Debug + std::fmt::Display + Zero + One + CheckedAdd + CheckedMul + FromPrimitive
{
}

/// Ordered field element: `f32`, `f64`, or an exact rational.
pub trait Scalar: Clone + PartialOrd + Debug + Num + Neg<Output = Self> {
    /// `num / den`; approximate for floats.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Whether arithmetic on this type is exact.
    const EXACT: bool;
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
    const EXACT: bool = false;
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    const EXACT: bool = false;
}

impl Scalar for Ratio<i128> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }
    const EXACT: bool = true;
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
    const EXACT: bool = true;
}

/// `base^exp` by repeated squaring, `None` on overflow.
pub fn checked_pow<T: Count>(base: &T, mut exp: u32) -> Option<T> {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.checked_mul(&b)?;
        }
        exp >>= 1;
        if exp > 0 {
            b = b.checked_mul(&b)?;
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn pow_overflow_is_reported() {
        assert_eq!(checked_pow(&3u64, 4), Some(81));
        assert_eq!(checked_pow(&2u32, 32), None);
        assert_eq!(checked_pow(&BigUint::from(2u8), 100), Some(BigUint::one() << 100));
    }
}
