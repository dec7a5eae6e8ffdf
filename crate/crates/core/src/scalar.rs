//! Exact scalar abstractions.
//!
//! Everything numeric in this crate is exact. The algebra (polynomials,
//! matrices, truncated power series) is written once against [`Ring`] and
//! instantiated with machine integers for speed in tests, with [`BigInt`]
//! for the public invariants and with [`BigRational`] where division is
//! needed.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Zero};

/// A commutative ring with unit whose elements can be built from small integers.
///
/// Implemented automatically for every type with the right arithmetic, which
/// covers `i64`, `i128`, [`BigInt`] and the rational types.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + FromPrimitive
{
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("integer does not fit the scalar type")
    }
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + FromPrimitive
{
}

/// A [`Ring`] in which every nonzero element is invertible.
///
/// Integer types also implement `Div`, but as truncating division, so this
/// is an explicit marker rather than a blanket impl.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Debug + FromPrimitive + Neg<Output = T>,
    Ratio<T>: Ring,
{
}

/// Converts a rational to an integer when its denominator is one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_squares<T: Ring>(n: usize) -> T {
        (1..=n).fold(T::zero(), |acc, k| {
            let k = T::from_usize_exact(k);
            acc + k.clone() * k
        })
    }

    #[test]
    fn ring_instances_agree() {
        assert_eq!(sum_of_squares::<i64>(10), 385);
        assert_eq!(sum_of_squares::<BigInt>(10), BigInt::from(385));
        assert_eq!(
            sum_of_squares::<BigRational>(10),
            BigRational::from_integer(BigInt::from(385))
        );
    }

    #[test]
    fn integral_rationals() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_to_integer(&half), None);
        let four = BigRational::new(BigInt::from(8), BigInt::from(2));
        assert_eq!(rational_to_integer(&four), Some(BigInt::from(4)));
    }
}
