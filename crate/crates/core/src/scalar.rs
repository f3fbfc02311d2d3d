//! Coefficient types.
//!
//! Everything in this crate computes over the integers. The arithmetic is
//! written against [`Coeff`] so the same code runs on machine integers (handy
//! for quick experiments) and on [`BigInt`](num_bigint::BigInt), which is what
//! the crate-root aliases use and what anything user-facing should use:
//! Sylvester determinants and Smith normal form intermediates leave the 64-bit
//! range quickly.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact integer type usable as a coefficient.
pub trait Coeff:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + num_integer::Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every coefficient type")
    }

    /// True for `1` and `-1`.
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl<T> Coeff for T where
    T: Clone
        + Ord
        + Hash
        + Debug
        + Display
        + num_integer::Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An integral domain with exact division, the minimum needed for
/// fraction-free elimination.
///
/// Implemented for every [`Coeff`] and for Laurent polynomials over one.
pub trait Domain: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `q * other == self`, or `None` if `other` does not
    /// divide `self` (including division by zero).
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl<T: Coeff> Domain for T {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        num_traits::Zero::is_zero(&r).then_some(q)
    }
}
