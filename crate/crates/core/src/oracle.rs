//! Reference evaluators built from the entire sin/cos series.
//!
//! These are independent of the coefficient generators they are used to
//! check: every catalog function is formed compositionally from `sin` and
//! `cos` evaluated by their everywhere-convergent Maclaurin series.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::real::{pi, BigReal, MIN_PRECISION};

/// `x ↦ f(x)` evaluated at a working precision.
pub type Oracle = Arc<dyn Fn(&BigReal, u32) -> Result<BigReal> + Send + Sync>;

/// Extra bits carried internally by the oracles.
pub const ORACLE_GUARD_BITS: u32 = 64;

fn series_done(term: &BigReal, sum: &BigReal, work: u32) -> bool {
    match (term.top_bit(), sum.top_bit()) {
        (None, _) => true,
        (Some(t), Some(s)) => t < s - i64::from(work) - 8,
        (Some(t), None) => t < -i64::from(work) - 8,
    }
}

/// `(sin x, cos x)` rounded to `prec` bits.
pub fn sin_cos(x: &BigReal, prec: u32) -> (BigReal, BigReal) {
    let prec = prec.max(MIN_PRECISION);
    let mut x = x.round_to(prec + 32);
    // keep |x| <= π so the series does not cancel catastrophically
    let magnitude = x.to_f64().abs();
    let extra = if magnitude > 1.0 {
        magnitude.log2().ceil() as u32
    } else {
        0
    };
    let work = prec + 32 + extra;
    if magnitude > 4.0 {
        let two_pi = pi(work + 64).mul_pow2(1);
        let k = (x.to_f64() / two_pi.to_f64()).round();
        let k = BigReal::from_int(k.to_i64().unwrap_or(0), work + 64);
        x = (x.round_to(work + 64) - k * two_pi).round_to(work);
    }
    let x = x.round_to(work);
    let x2 = &x * &x;

    let mut sin = x.clone();
    let mut term = x.clone();
    let mut k = 1u64;
    loop {
        term = -(&term * &x2) / BigReal::from_int((2 * k) * (2 * k + 1), work);
        sin = &sin + &term;
        if series_done(&term, &sin, work) {
            break;
        }
        k += 1;
    }

    let mut cos = BigReal::from_int(1, work);
    let mut term = BigReal::from_int(1, work);
    let mut k = 1u64;
    loop {
        term = -(&term * &x2) / BigReal::from_int((2 * k - 1) * (2 * k), work);
        cos = &cos + &term;
        if series_done(&term, &cos, work) {
            break;
        }
        k += 1;
    }
    (sin.round_to(prec), cos.round_to(prec))
}

pub fn sin(x: &BigReal, prec: u32) -> BigReal {
    sin_cos(x, prec).0
}

pub fn cos(x: &BigReal, prec: u32) -> BigReal {
    sin_cos(x, prec).1
}

pub fn tan(x: &BigReal, prec: u32) -> BigReal {
    let (s, c) = sin_cos(x, prec + 16);
    (s / c).round_to(prec)
}

pub fn cot(x: &BigReal, prec: u32) -> BigReal {
    let (s, c) = sin_cos(x, prec + 16);
    (c / s).round_to(prec)
}
