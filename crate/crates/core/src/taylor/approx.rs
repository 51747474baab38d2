//! First and second Taylor approximations and their remainders.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{Coeff, ExactReal};
use crate::oracle::Oracle;
use crate::poly::{poly_eval, Poly};
use crate::real::BigReal;
use crate::scalar::ToReal;
use crate::series::{LeftSeriesFn, SeriesFn};

pub(crate) fn exact_poly(anchor: &ExactReal, coeffs: Vec<ExactReal>) -> Poly<Coeff> {
    Poly::new(
        Coeff::Exact(anchor.clone()),
        coeffs.into_iter().map(Coeff::Exact).collect(),
    )
}

/// `T_n`: the Taylor polynomial `Σ_{k<=n} c_k (x - a)^k` at the anchor.
pub fn first_taylor(f: &SeriesFn, n: usize) -> Result<Poly<Coeff>> {
    Ok(exact_poly(f.anchor(), f.coeffs_through(n)?))
}

/// `T_{n-1}` corrected in its degree-`n` term so that it interpolates
/// `f(b-)` at `b`:
///
/// `T_{n-1}(x) + (f(b-) - T_{n-1}(b)) / (b - a)^n · (x - a)^n`,
///
/// and the constant `f(b-)` for `n = 0`. Coefficients stay exact when the
/// endpoint limit is exact; `prec` only matters for numeric limits.
pub fn second_taylor(f: &SeriesFn, n: usize, prec: u32) -> Result<Poly<Coeff>> {
    let end = f.end_value(prec)?;
    let anchor = Coeff::Exact(f.anchor().clone());
    if n == 0 {
        return Ok(Poly::constant(anchor, end));
    }
    let head = first_taylor(f, n - 1)?;
    let at_end = head.eval(&Coeff::Exact(f.right_end().clone()));
    let remainder = end - at_end;
    let scale = Coeff::Exact(f.width().pow(n as u32));
    let lead = remainder.div_or_round(&scale, prec);
    let mut coeffs: Vec<Coeff> = (0..n).map(|k| head.coeff(k)).collect();
    coeffs.push(lead);
    Ok(Poly::new(anchor, coeffs))
}

/// `T_n` of a left-anchored series, in powers of `(x - b)`.
pub fn first_taylor_left(f: &LeftSeriesFn, n: usize) -> Result<Poly<Coeff>> {
    let right = f.mirror();
    Ok(reflect(&first_taylor(&right, n)?, &right))
}

/// Second approximation in the left neighbourhood of `b`, built by
/// reflecting `x ↦ a + b - x`, applying [`second_taylor`] to the mirrored
/// series, and reflecting the result back. It interpolates `f(a+)` at `a`.
pub fn second_taylor_left(f: &LeftSeriesFn, n: usize, prec: u32) -> Result<Poly<Coeff>> {
    let right = f.mirror();
    Ok(reflect(&second_taylor(&right, n, prec)?, &right))
}

/// Reflect a polynomial through the midpoint of `f`'s interval.
pub fn reflect(p: &Poly<Coeff>, f: &SeriesFn) -> Poly<Coeff> {
    p.reflect(
        &Coeff::Exact(f.anchor().clone()),
        &Coeff::Exact(f.right_end().clone()),
    )
}

fn interval_text(f: &SeriesFn, open_right: bool) -> String {
    let close = if open_right { ")" } else { "]" };
    format!("({}, {}{close}", f.anchor(), f.right_end())
}

/// `R_n(x) = f(x) - T_{n-1}(x)` for `a < x <= b`; at `x = b` the endpoint
/// limit stands in for `f`.
pub fn remainder_eval(
    f: &SeriesFn,
    n: usize,
    x: &BigReal,
    oracle: &Oracle,
    prec: u32,
) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "remainder order must be at least 1".into(),
        ));
    }
    let a = f.anchor().to_real(prec);
    let b = f.right_end().to_real(prec);
    let domain_err = || Error::Domain {
        what: format!("remainder of `{}`", f.name()),
        x: x.to_sci_string(20),
        interval: interval_text(f, false),
    };
    if x <= &a || x > &b {
        return Err(domain_err());
    }
    let value = if x == &b {
        f.end_value(prec)?.to_real(prec)
    } else {
        oracle(x, prec)?
    };
    Ok(value - poly_eval(&first_taylor(f, n - 1)?, x, prec))
}

/// Closed form of `𝕋_n(x) - 𝕋_{n+1}(x)`:
///
/// `((b - x)/(b - a)) · ((x - a)/(b - a))^n · (f(b-) - T_n(b))`.
///
/// Its sign on `(a, b)` is the sign of `f(b-) - T_n(b)`.
pub fn successive_difference(f: &SeriesFn, n: usize, x: &BigReal, prec: u32) -> Result<BigReal> {
    let a = f.anchor().to_real(prec);
    let b = f.right_end().to_real(prec);
    if x < &a || x > &b {
        return Err(Error::Domain {
            what: format!("successive difference of `{}`", f.name()),
            x: x.to_sci_string(20),
            interval: format!("[{}, {}]", f.anchor(), f.right_end()),
        });
    }
    let gap = endpoint_gap(f, n, prec)?.to_real(prec);
    let width = &b - &a;
    let left = (&b - x) / &width;
    let right = ((x - &a) / &width).powi(n as u32);
    Ok(left * right * gap)
}

/// `f(b-) - T_n(b)`, exact when the endpoint limit is.
pub fn endpoint_gap(f: &SeriesFn, n: usize, prec: u32) -> Result<Coeff> {
    let end = f.end_value(prec)?;
    let t = first_taylor(f, n)?;
    Ok(end - t.eval(&Coeff::Exact(f.right_end().clone())))
}

/// Sign of `𝕋_n - 𝕋_{n+1}` throughout `(a, b)`.
pub fn successive_sign(f: &SeriesFn, n: usize, prec: u32) -> Result<Ordering> {
    Ok(endpoint_gap(f, n, prec)?.signum())
}
