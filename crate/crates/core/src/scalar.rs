//! Scalar abstractions shared by polynomial and series code.
//!
//! Everything above this layer is written against [`Ring`] (or [`Field`] when
//! division is needed), so the same polynomial and Cauchy-product code runs on
//! `f32`/`f64`, exact rationals, the exact π-Laurent scalar [`ExactReal`], and
//! the arbitrary-precision [`BigReal`].
//!
//! [`ExactReal`]: crate::exact::ExactReal
//! [`BigReal`]: crate::real::BigReal

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::real::BigReal;

/// Commutative ring with identity, as far as the polynomial code cares.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// A [`Ring`] with (possibly inexact) division.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Realization of a scalar as a [`BigReal`] at a given working precision.
pub trait ToReal {
    fn to_real(&self, prec: u32) -> BigReal;
}

impl ToReal for BigReal {
    fn to_real(&self, prec: u32) -> BigReal {
        self.round_to(prec)
    }
}

impl ToReal for f64 {
    fn to_real(&self, prec: u32) -> BigReal {
        BigReal::from_f64(*self, prec)
    }
}

impl ToReal for f32 {
    fn to_real(&self, prec: u32) -> BigReal {
        BigReal::from_f64(f64::from(*self), prec)
    }
}

impl ToReal for crate::Rational {
    fn to_real(&self, prec: u32) -> BigReal {
        BigReal::from_rational(self, prec)
    }
}
