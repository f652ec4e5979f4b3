use num_traits::{One, Zero};

use crate::scalars::Rational;

/// Exact commutative coefficient ring for [`Series`](super::Series).
///
/// Only what the series algorithms need: ring operations, exact equality,
/// the ℚ-algebra structure (`scale`) and inversion of units.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(&self, q: &Rational) -> Self;
    /// Multiplicative inverse, if `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn from_rational(q: &Rational) -> Self {
        Self::one().scale(q)
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}
