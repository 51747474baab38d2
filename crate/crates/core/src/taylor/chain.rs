//! Monotone families of first and second approximations.
//!
//! For a series with one-signed coefficients the first approximations
//! increase with the degree toward `f` and the second approximations
//! decrease toward it (reversed for non-positive coefficients), giving
//! `T_{d0} <= T_{d1} <= ... <= f <= ... <= 𝕋_{d1} <= 𝕋_{d0}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Coeff, ExactReal};
use crate::poly::Poly;
use crate::series::{SeriesFn, SignPattern};
use crate::taylor::approx::{first_taylor, second_taylor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundPoly {
    pub poly: Poly<Coeff>,
    pub side: Side,
    pub kind: Kind,
    pub degree: usize,
    pub source: String,
}

impl BoundPoly {
    /// Short label such as `T4` or `TT4` (second approximation).
    pub fn label(&self) -> String {
        match self.kind {
            Kind::First => format!("T{}", self.degree),
            Kind::Second => format!("TT{}", self.degree),
        }
    }

    fn shifted(mut self, c: &ExactReal) -> Self {
        let shift = Poly::constant(self.poly.anchor().clone(), Coeff::Exact(c.clone()));
        self.poly = self.poly.checked_add(&shift).expect("same anchor");
        self
    }

    /// Reflect through the midpoint of `[lo, hi]` (`x ↦ lo + hi - x`).
    pub fn reflected(&self, lo: &ExactReal, hi: &ExactReal) -> Self {
        BoundPoly {
            poly: self
                .poly
                .reflect(&Coeff::Exact(lo.clone()), &Coeff::Exact(hi.clone())),
            ..self.clone()
        }
    }
}

impl fmt::Display for BoundPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:?} {:?}] = {}",
            self.label(),
            self.side,
            self.kind,
            self.poly
        )
    }
}

#[derive(Clone, Debug)]
pub struct NestingChain {
    /// Degrees ascending; pointwise non-decreasing.
    pub lowers: Vec<BoundPoly>,
    /// Degrees ascending; pointwise non-increasing.
    pub uppers: Vec<BoundPoly>,
    pub source: String,
}

impl NestingChain {
    /// All bounds in pointwise ascending order: lowers by ascending degree,
    /// then uppers by descending degree. The function itself belongs between
    /// the two halves, at index `lowers.len()`.
    pub fn ordered(&self) -> Vec<&BoundPoly> {
        self.lowers.iter().chain(self.uppers.iter().rev()).collect()
    }

    pub fn reflected(&self, lo: &ExactReal, hi: &ExactReal) -> NestingChain {
        NestingChain {
            lowers: self.lowers.iter().map(|b| b.reflected(lo, hi)).collect(),
            uppers: self.uppers.iter().map(|b| b.reflected(lo, hi)).collect(),
            source: self.source.clone(),
        }
    }
}

fn bound(f: &SeriesFn, d: usize, kind: Kind, side: Side, prec: u32) -> Result<BoundPoly> {
    let poly = match kind {
        Kind::First => first_taylor(f, d)?,
        Kind::Second => second_taylor(f, d, prec)?,
    };
    Ok(BoundPoly {
        poly,
        side,
        kind,
        degree: d,
        source: f.name().to_string(),
    })
}

/// Build the chain for `degrees` (strictly ascending).
///
/// `AllNonposAfterConst` series are handled by removing the constant term,
/// building the non-positive chain and adding the constant back; the
/// translation moves every curve by the same amount.
pub fn nesting_chain(f: &SeriesFn, degrees: &[usize], prec: u32) -> Result<NestingChain> {
    if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "degrees must be a non-empty strictly ascending list".into(),
        ));
    }
    let (first_side, second_side) = match f.sign_pattern() {
        SignPattern::AllNonneg => (Side::Lower, Side::Upper),
        SignPattern::AllNonpos => (Side::Upper, Side::Lower),
        SignPattern::AllNonposAfterConst => {
            let c0 = f.coeff(0)?;
            let shifted = f.minus_constant(&c0);
            let inner = nesting_chain(&shifted, degrees, prec)?;
            let restore = |b: &BoundPoly| BoundPoly {
                source: f.name().to_string(),
                ..b.clone().shifted(&c0)
            };
            return Ok(NestingChain {
                lowers: inner.lowers.iter().map(restore).collect(),
                uppers: inner.uppers.iter().map(restore).collect(),
                source: f.name().to_string(),
            });
        }
        other => return Err(Error::Unsupported {
            name: f.name().to_string(),
            pattern: other.to_string(),
            hint: "nesting chains need one-signed coefficients; use the split-based bounds instead"
                .into(),
        }),
    };
    let firsts: Vec<BoundPoly> = degrees
        .iter()
        .map(|&d| bound(f, d, Kind::First, first_side, prec))
        .collect::<Result<_>>()?;
    let seconds: Vec<BoundPoly> = degrees
        .iter()
        .map(|&d| bound(f, d, Kind::Second, second_side, prec))
        .collect::<Result<_>>()?;
    let (lowers, uppers) = if first_side == Side::Lower {
        (firsts, seconds)
    } else {
        (seconds, firsts)
    };
    Ok(NestingChain {
        lowers,
        uppers,
        source: f.name().to_string(),
    })
}

/// `T_n, T_{n+1}, 𝕋_{n+1}, 𝕋_n` arranged in pointwise ascending order
/// (reversed for non-positive coefficient series).
pub fn consecutive_bounds(f: &SeriesFn, n: usize, prec: u32) -> Result<[BoundPoly; 4]> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let chain = nesting_chain(f, &[n, n + 1], prec)?;
    let ordered: Vec<BoundPoly> = chain.ordered().into_iter().cloned().collect();
    Ok(ordered.try_into().expect("two degrees give four bounds"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::EndLimit;

    fn exp_like() -> SeriesFn {
        // 1 + x + x²/2 + x³/6 on (0, 1), end value 8/3
        let c = vec![
            ExactReal::integer(1),
            ExactReal::integer(1),
            ExactReal::ratio(1, 2),
            ExactReal::ratio(1, 6),
        ];
        SeriesFn::from_coeffs(
            "cubic",
            ExactReal::default(),
            ExactReal::integer(1),
            c,
            EndLimit::Exact(ExactReal::ratio(8, 3)),
        )
        .unwrap()
        .with_sign(SignPattern::AllNonneg)
    }

    #[test]
    fn singleton_chain_is_plain_pair() {
        let f = exp_like();
        let c = nesting_chain(&f, &[2], 128).unwrap();
        assert_eq!(c.lowers.len(), 1);
        assert_eq!(c.lowers[0].poly, first_taylor(&f, 2).unwrap());
        assert_eq!(c.uppers[0].poly, second_taylor(&f, 2, 128).unwrap());
        assert_eq!(c.lowers[0].side, Side::Lower);
    }

    #[test]
    fn degrees_must_ascend() {
        assert!(nesting_chain(&exp_like(), &[2, 1], 128).is_err());
        assert!(nesting_chain(&exp_like(), &[], 128).is_err());
    }

    #[test]
    fn mixed_pattern_unsupported() {
        let f = exp_like().with_sign(SignPattern::Mixed(vec![1]));
        assert!(matches!(
            nesting_chain(&f, &[1], 128),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn nonpos_swaps_roles() {
        let f = exp_like().negated();
        let c = nesting_chain(&f, &[1, 2], 128).unwrap();
        assert_eq!(c.lowers[0].kind, Kind::Second);
        assert_eq!(c.uppers[0].kind, Kind::First);
    }

    #[test]
    fn consecutive_bounds_order() {
        let q = consecutive_bounds(&exp_like(), 1, 128).unwrap();
        let labels: Vec<_> = q.iter().map(|b| b.label()).collect();
        assert_eq!(labels, ["T1", "T2", "TT2", "TT1"]);
    }
}
