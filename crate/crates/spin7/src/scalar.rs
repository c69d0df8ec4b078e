//! Coefficient rings for forms: plain numbers and truncated jets.
//!
//! Every exterior-algebra routine in this crate is generic over a
//! commutative ring of coefficients. The two interesting instances are
//! `f64` (pointwise values) and the jets of [`crate::jet`], which carry
//! exact partial derivatives through the same formulas.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// A commutative ring with an `f64` unit map, used as form coefficients.
pub trait Ring:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;

    fn from_f64(c: f64) -> Self;

    /// Multiply by a plain number.
    fn scale(self, c: f64) -> Self;

    /// The underlying point value (jets: the order-zero part).
    fn value(&self) -> f64;

    /// True only when every stored component is exactly zero. Used to skip
    /// structurally absent terms; a jet with value 0 but nonzero derivative
    /// is not zero.
    fn is_zero(&self) -> bool;
}

impl Ring for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    fn from_f64(c: f64) -> Self {
        c
    }

    fn scale(self, c: f64) -> Self {
        self * c
    }

    fn value(&self) -> f64 {
        *self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

/// Rings whose elements know their own partial derivatives.
///
/// `partial(i)` returns d/dx_i of the element, one differentiability order
/// lower; `truncate` forgets the highest stored order. The chain
/// `Jet2 -> Jet1 -> f64` terminates at `f64`, whose partials are zero.
/// The exterior derivative of a form over `Self` is a form over `Lower`,
/// so the type system enforces that no routine ever requests third
/// derivatives of the input fields.
pub trait Differentiable: Ring {
    type Lower: Ring;

    fn partial(&self, i: usize) -> Self::Lower;
    fn truncate(&self) -> Self::Lower;
}

impl Differentiable for f64 {
    type Lower = f64;

    fn partial(&self, _i: usize) -> f64 {
        0.0
    }

    fn truncate(&self) -> f64 {
        *self
    }
}
