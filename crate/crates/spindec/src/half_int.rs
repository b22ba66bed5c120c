//! Exact half-integers, stored as the doubled value 2s.
//!
//! Spin eigenvalues are integers or half-odd-integers depending on the parity
//! of 2S; keeping 2s in an `i64` avoids rational normalization on the hot
//! enumeration paths.

use crate::rational::BigRational;
use core::fmt;
use core::ops::{Add, Neg, Sub};
use num_bigint::BigInt;

/// A value s with 2s stored exactly.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    /// s = doubled/2.
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.doubled), BigInt::from(2))
    }

    pub const fn abs(self) -> Self {
        HalfInt { doubled: self.doubled.abs() }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled + rhs.doubled }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled - rhs.doubled }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { doubled: -self.doubled }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}
