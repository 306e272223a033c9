use std::fmt::Debug;

use super::ExactScalar;

/// A commutative ring with unit, as needed by division-free kernels
/// (characteristic polynomial, Pfaffian, matrix products).
///
/// Implemented by [`ExactScalar`] and by first-order jets, so the same kernel
/// yields both a value and an exact directional derivative.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Embed a field element as a constant.
    fn constant(c: &ExactScalar) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn plus_assign(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

impl Ring for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn constant(c: &ExactScalar) -> Self {
        c.clone()
    }
}
