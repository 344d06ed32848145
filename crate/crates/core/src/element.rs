use std::fmt;

use crate::clifford::{Algebra, Multivector};
use crate::error::Result;
use crate::scalar::{Rational, Scalar};

/// An element of an associative algebra over ℂ whose commutator serves as
/// the Lie bracket. Implemented by Clifford multivectors and square matrices,
/// so the constant-solution machinery works for both realizations.
pub trait AlgebraElement: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// The ambient algebra (a Clifford signature, a matrix order, ...).
    type Space: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn space(&self) -> Self::Space;
    fn zero_in(space: &Self::Space) -> Self;
    fn identity_in(space: &Self::Space) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, s: &Scalar) -> Self;

    fn is_zero(&self) -> bool;
    /// Squared Euclidean norm of the coordinates.
    fn norm_sq(&self) -> Rational;
    /// Hermitian coordinate inner product, conjugate-linear in `self`.
    fn inner(&self, other: &Self) -> Scalar;
    fn inverse(&self) -> Result<Self>;

    fn commutator(&self, other: &Self) -> Self {
        self.times(other).minus(&other.times(self))
    }

    fn anticommutator(&self, other: &Self) -> Self {
        self.times(other).plus(&other.times(self))
    }
}

impl AlgebraElement for Multivector {
    type Space = Algebra;

    fn space(&self) -> Algebra {
        self.algebra()
    }

    fn zero_in(space: &Algebra) -> Self {
        Multivector::zero(*space)
    }

    fn identity_in(space: &Algebra) -> Self {
        Multivector::identity(*space)
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

    fn scaled(&self, s: &Scalar) -> Self {
        self.scale(s)
    }

    fn is_zero(&self) -> bool {
        Multivector::is_zero(self)
    }

    fn norm_sq(&self) -> Rational {
        Multivector::norm_sq(self)
    }

    fn inner(&self, other: &Self) -> Scalar {
        Multivector::inner(self, other)
    }

    fn inverse(&self) -> Result<Self> {
        Multivector::inverse(self)
    }
}
