use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Raised by machine-word arithmetic when a result does not fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Exact integer coefficients for tensor polynomials and elimination.
///
/// `i64` reports overflow; `BigInt` never does. Computations run with `i64`
/// first and are repeated over `BigInt` when an overflow is reported.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self, Overflow>;
    fn sub(&self, other: &Self) -> Result<Self, Overflow>;
    fn mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Result<Self, Overflow>;
    /// Nonnegative gcd.
    fn gcd(&self, other: &Self) -> Result<Self, Overflow>;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }

    fn add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(*other).ok_or(Overflow)
    }

    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*other).ok_or(Overflow)
    }

    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }

    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }

    fn gcd(&self, other: &Self) -> Result<Self, Overflow> {
        if *self == i64::MIN || *other == i64::MIN {
            return Err(Overflow);
        }
        Ok(Integer::gcd(self, other))
    }

    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn add(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self + other)
    }

    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }

    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }

    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }

    fn gcd(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(Integer::gcd(self, other))
    }

    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}
