use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};

/// Commutative ring whose elements know their ground field.
///
/// Elements never exist without a field, so constants are built from a
/// [`Field`] rather than from a type-level zero.
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Number of polynomial variables stacked over the ground field.
    const NESTING: u8;

    fn zero(field: Field) -> Self;
    fn one(field: Field) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn field(&self) -> Field;
    fn scale(&self, s: &Scalar) -> Self;
}

/// Rings in which divisibility can be decided and the quotient computed.
pub trait ExactDiv: Ring {
    /// `Some(q)` with `q * d == self`, or `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Ring for Scalar {
    const NESTING: u8 = 0;

    fn zero(field: Field) -> Self {
        field.zero()
    }
    fn one(field: Field) -> Self {
        field.one()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn field(&self) -> Field {
        Scalar::field(self)
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl ExactDiv for Scalar {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Some(self * &d.inv()?)
    }
}
