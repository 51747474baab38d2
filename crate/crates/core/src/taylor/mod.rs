//! Double-sided Taylor approximations.
//!
//! For `f = Σ c_k (x - a)^k` on `(a, b)` with a finite limit `f(b-)`:
//!
//! * the *first* approximation `T_n` is the Taylor polynomial at `a`;
//! * the *second* approximation `𝕋_n` keeps `T_{n-1}` and replaces the
//!   degree-`n` coefficient so that the polynomial interpolates `f(b-)`.
//!
//! When `f^{(n)}` is monotone the two sandwich `f` on `(a, b)`.

pub mod approx;
pub mod chain;
pub mod split;

pub use approx::{
    endpoint_gap, first_taylor, first_taylor_left, reflect, remainder_eval, second_taylor,
    second_taylor_left, successive_difference, successive_sign,
};
pub use chain::{consecutive_bounds, nesting_chain, BoundPoly, Kind, NestingChain, Side};
pub use split::{high_degree_bounds, split_bounds, split_series, SplitSeries};
