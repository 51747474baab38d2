//! Double-sided Taylor approximations of analytic functions on a bounded
//! interval, with exact coefficient arithmetic and high-precision
//! verification of the resulting polynomial inequalities.

pub mod bernoulli;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod poly;
pub mod real;
pub mod scalar;
pub mod series;
pub mod taylor;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Coeff, ExactReal};
pub use poly::{poly_eval, Poly};
pub use real::BigReal;
pub use scalar::{Field, Ring, ToReal};
pub use series::{cauchy_product, series_mul, EndLimit, LeftSeriesFn, SeriesFn, SignPattern};

pub type Rational = num_rational::BigRational;

/// Polynomials with exact coefficients in `Q[π, 1/π]`, or rounded reals
/// where exactness is lost.
pub type ExactPoly = Poly<Coeff>;
pub type RationalPoly = Poly<Rational>;
pub type F64Poly = Poly<f64>;
pub type F32Poly = Poly<f32>;
