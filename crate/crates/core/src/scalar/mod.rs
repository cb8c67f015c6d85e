//! Exact scalars: the rationals and single quadratic extensions of them.
//!
//! Everything above this module is generic over [`Field`], so the same
//! rewriting and isomorphism code runs over `ℚ` or over `ℚ(√d)` when an
//! eigenvalue computation leaves the rationals.

mod quad;
mod rational;
mod roots;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

pub use quad::{squarefree_decompose, QuadExt};
pub use rational::Rational;
pub use roots::{quadratic_roots, QuadraticRoots};

use crate::error::Result;

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Multiplicative inverse; fails on zero.
    fn inv(&self) -> Result<Self>;
    fn from_rational(r: Rational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
    /// The rational value of `self`, if it lies in `ℚ`.
    fn to_rational(&self) -> Option<Rational>;
    /// Parses the textual form produced by `Display`.
    fn parse_scalar(s: &str) -> Result<Self>;
    /// True when `Display` output can be juxtaposed with `*word` unambiguously.
    fn is_simple(&self) -> bool;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }
    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }
}
