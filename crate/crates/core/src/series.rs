//! Power series on an interval: coefficient generators plus endpoint limits.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Coeff, ExactReal};
use crate::real::BigReal;
use crate::scalar::{Ring, ToReal};

/// Truncated Cauchy product: the first `terms` coefficients of `u · v`.
pub fn cauchy_product<T: Ring>(u: &[T], v: &[T], terms: usize) -> Vec<T> {
    (0..terms)
        .map(|k| {
            let mut acc = T::zero();
            for i in 0..=k {
                if let (Some(a), Some(b)) = (u.get(i), v.get(k - i)) {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
        .collect()
}

type CoeffFn = Arc<dyn Fn(usize) -> ExactReal + Send + Sync>;
type NumericLimit = Arc<dyn Fn(u32) -> BigReal + Send + Sync>;

/// The value a series approaches at the far end of its interval.
#[derive(Clone)]
pub enum EndLimit {
    Exact(ExactReal),
    /// Evaluated on demand at the requested precision.
    Numeric(NumericLimit),
    /// The function diverges there (e.g. `tan` at `π/2`).
    Unavailable,
}

impl EndLimit {
    pub fn numeric(f: impl Fn(u32) -> BigReal + Send + Sync + 'static) -> Self {
        EndLimit::Numeric(Arc::new(f))
    }

    pub fn value(&self, prec: u32) -> Option<Coeff> {
        match self {
            EndLimit::Exact(e) => Some(Coeff::Exact(e.clone())),
            EndLimit::Numeric(f) => Some(Coeff::Real(f(prec))),
            EndLimit::Unavailable => None,
        }
    }

    /// `±limit + shift`.
    fn affine(&self, negate: bool, shift: &ExactReal) -> EndLimit {
        match self {
            EndLimit::Exact(e) => EndLimit::Exact(&e.signed(negate) + shift),
            EndLimit::Numeric(f) => {
                let (f, shift) = (f.clone(), shift.clone());
                EndLimit::numeric(move |p| {
                    let v = f(p);
                    let v = if negate { -v } else { v };
                    v + shift.to_real(p)
                })
            }
            EndLimit::Unavailable => EndLimit::Unavailable,
        }
    }
}

impl fmt::Debug for EndLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndLimit::Exact(e) => write!(f, "Exact({e})"),
            EndLimit::Numeric(_) => f.write_str("Numeric(..)"),
            EndLimit::Unavailable => f.write_str("Unavailable"),
        }
    }
}

/// Declared sign structure of the coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignPattern {
    /// `c_k >= 0` for every `k`.
    AllNonneg,
    /// `c_k <= 0` for every `k`.
    AllNonpos,
    /// `c_k <= 0` for every `k >= 1`; `c_0` unrestricted.
    AllNonposAfterConst,
    /// Negative coefficients occur exactly at the listed indices; all others are `>= 0`.
    Mixed(Vec<usize>),
    /// Nothing is declared.
    Unknown,
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignPattern::AllNonneg => f.write_str("all-nonneg"),
            SignPattern::AllNonpos => f.write_str("all-nonpos"),
            SignPattern::AllNonposAfterConst => f.write_str("all-nonpos-after-const"),
            SignPattern::Mixed(idx) => {
                let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "mixed{{{}}}", list.join(","))
            }
            SignPattern::Unknown => f.write_str("unknown"),
        }
    }
}

/// An analytic function on `(anchor, right_end)` given by its power series
/// `Σ c_k (x - anchor)^k` and its limit at `right_end`.
#[derive(Clone)]
pub struct SeriesFn {
    name: String,
    anchor: ExactReal,
    right_end: ExactReal,
    coeff: CoeffFn,
    valid_terms: Option<usize>,
    end_limit: EndLimit,
    sign: SignPattern,
}

impl SeriesFn {
    pub fn new(
        name: impl Into<String>,
        anchor: ExactReal,
        right_end: ExactReal,
        coeff: impl Fn(usize) -> ExactReal + Send + Sync + 'static,
        end_limit: EndLimit,
    ) -> Result<Self> {
        let name = name.into();
        if (&right_end - &anchor).signum() != std::cmp::Ordering::Greater {
            return Err(Error::InvalidArgument(format!(
                "`{name}`: right end {right_end} must exceed anchor {anchor}"
            )));
        }
        Ok(SeriesFn {
            name,
            anchor,
            right_end,
            coeff: Arc::new(coeff),
            valid_terms: None,
            end_limit,
            sign: SignPattern::Unknown,
        })
    }

    /// Series with finitely many listed coefficients (the rest zero).
    pub fn from_coeffs(
        name: impl Into<String>,
        anchor: ExactReal,
        right_end: ExactReal,
        coeffs: Vec<ExactReal>,
        end_limit: EndLimit,
    ) -> Result<Self> {
        Self::new(
            name,
            anchor,
            right_end,
            move |k| coeffs.get(k).cloned().unwrap_or_default(),
            end_limit,
        )
    }

    pub fn with_sign(mut self, sign: SignPattern) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replace the end limit, e.g. when a product of a vanishing and a
    /// diverging factor has a finite limit known in closed form.
    pub fn with_end_limit(mut self, end_limit: EndLimit) -> Self {
        self.end_limit = end_limit;
        self
    }

    /// Coefficients at indices `>= terms` become unavailable.
    pub fn truncated(mut self, terms: usize) -> Self {
        self.valid_terms = Some(self.valid_terms.map_or(terms, |v| v.min(terms)));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn anchor(&self) -> &ExactReal {
        &self.anchor
    }

    pub fn right_end(&self) -> &ExactReal {
        &self.right_end
    }

    /// `right_end - anchor`.
    pub fn width(&self) -> ExactReal {
        &self.right_end - &self.anchor
    }

    pub fn sign_pattern(&self) -> &SignPattern {
        &self.sign
    }

    pub fn end_limit(&self) -> &EndLimit {
        &self.end_limit
    }

    pub fn valid_terms(&self) -> Option<usize> {
        self.valid_terms
    }

    /// Endpoint limit at `prec`, or [`Error::NoEndpoint`].
    pub fn end_value(&self, prec: u32) -> Result<Coeff> {
        self.end_limit
            .value(prec)
            .ok_or_else(|| Error::NoEndpoint(self.name.clone()))
    }

    pub fn has_endpoint(&self) -> bool {
        !matches!(self.end_limit, EndLimit::Unavailable)
    }

    pub fn coeff(&self, k: usize) -> Result<ExactReal> {
        match self.valid_terms {
            Some(valid) if k >= valid => Err(Error::Truncated {
                name: self.name.clone(),
                index: k,
                valid,
            }),
            _ => Ok((self.coeff)(k)),
        }
    }

    /// `c_0 ..= c_n`.
    pub fn coeffs_through(&self, n: usize) -> Result<Vec<ExactReal>> {
        (0..=n).map(|k| self.coeff(k)).collect()
    }

    /// `-f`, with the sign pattern transformed accordingly.
    pub fn negated(&self) -> SeriesFn {
        let inner = self.coeff.clone();
        let sign = match &self.sign {
            SignPattern::AllNonneg => SignPattern::AllNonpos,
            SignPattern::AllNonpos => SignPattern::AllNonneg,
            SignPattern::AllNonposAfterConst => {
                if (self.coeff)(0).signum() == std::cmp::Ordering::Greater {
                    SignPattern::Mixed(vec![0])
                } else {
                    SignPattern::AllNonneg
                }
            }
            _ => SignPattern::Unknown,
        };
        SeriesFn {
            name: format!("-({})", self.name),
            anchor: self.anchor.clone(),
            right_end: self.right_end.clone(),
            coeff: Arc::new(move |k| -inner(k)),
            valid_terms: self.valid_terms,
            end_limit: self.end_limit.affine(true, &ExactReal::zero()),
            sign,
        }
    }

    /// `f - c` for a constant `c` (only `c_0` and the end limit move).
    pub fn minus_constant(&self, c: &ExactReal) -> SeriesFn {
        let inner = self.coeff.clone();
        let c0 = c.clone();
        let c1 = c.clone();
        let sign = match &self.sign {
            SignPattern::AllNonposAfterConst => {
                let new_c0 = &(self.coeff)(0) - c;
                if new_c0.signum() != std::cmp::Ordering::Greater {
                    SignPattern::AllNonpos
                } else {
                    SignPattern::AllNonposAfterConst
                }
            }
            _ => SignPattern::Unknown,
        };
        SeriesFn {
            name: format!("{} - ({c})", self.name),
            anchor: self.anchor.clone(),
            right_end: self.right_end.clone(),
            coeff: Arc::new(move |k| if k == 0 { &inner(0) - &c0 } else { inner(k) }),
            valid_terms: self.valid_terms,
            end_limit: self.end_limit.affine(false, &-c1),
            sign,
        }
    }

    /// View the same function expanded about its right endpoint:
    /// `h(x) = f(anchor + right_end - x)`.
    pub fn mirror(&self) -> LeftSeriesFn {
        LeftSeriesFn {
            inner: flip_parity(self),
        }
    }
}

fn flip_parity(f: &SeriesFn) -> SeriesFn {
    let inner = f.coeff.clone();
    SeriesFn {
        name: f.name.clone(),
        anchor: f.anchor.clone(),
        right_end: f.right_end.clone(),
        coeff: Arc::new(move |k| inner(k).signed(k % 2 == 1)),
        valid_terms: f.valid_terms,
        end_limit: f.end_limit.clone(),
        // parity flips break one-signedness in general
        sign: SignPattern::Unknown,
    }
}

impl fmt::Debug for SeriesFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesFn")
            .field("name", &self.name)
            .field("anchor", &self.anchor)
            .field("right_end", &self.right_end)
            .field("end_limit", &self.end_limit)
            .field("sign", &self.sign)
            .finish()
    }
}

/// A function on `(left_end, anchor)` expanded about its *right* endpoint:
/// `Σ d_k (x - anchor)^k`, with its limit at `left_end`.
///
/// Stored as the coefficient sequence `d_k` over the same interval; the
/// mirror image `u ↦ h(left_end + anchor - u)` is an ordinary [`SeriesFn`]
/// with coefficients `(-1)^k d_k`.
#[derive(Clone, Debug)]
pub struct LeftSeriesFn {
    // coefficients here are the d_k; anchor/right_end of `inner` are (a, b)
    inner: SeriesFn,
}

impl LeftSeriesFn {
    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// The expansion point `b`.
    #[allow(clippy::misnamed_getters)]
    pub fn anchor(&self) -> &ExactReal {
        &self.inner.right_end
    }

    /// The far endpoint `a`.
    pub fn left_end(&self) -> &ExactReal {
        &self.inner.anchor
    }

    /// `d_k`, the coefficient of `(x - b)^k`.
    pub fn coeff(&self, k: usize) -> Result<ExactReal> {
        self.inner.coeff(k)
    }

    /// Limit at the far endpoint `a+`.
    pub fn end_limit(&self) -> &EndLimit {
        &self.inner.end_limit
    }

    /// The mirrored right-neighbourhood series, anchored at `a`.
    pub fn mirror(&self) -> SeriesFn {
        flip_parity(&self.inner)
    }
}

/// Cauchy product of two series on the same interval, valid for indices
/// below `terms`; the end limit is the product of end limits.
pub fn series_mul(u: &SeriesFn, v: &SeriesFn, terms: usize) -> Result<SeriesFn> {
    if u.anchor != v.anchor || u.right_end != v.right_end {
        return Err(Error::IntervalMismatch {
            left: u.name.clone(),
            right: v.name.clone(),
        });
    }
    let lhs: Vec<ExactReal> = (0..terms).map(|k| u.coeff(k)).collect::<Result<_>>()?;
    let rhs: Vec<ExactReal> = (0..terms).map(|k| v.coeff(k)).collect::<Result<_>>()?;
    let product = cauchy_product(&lhs, &rhs, terms);
    let end_limit = match (&u.end_limit, &v.end_limit) {
        (EndLimit::Unavailable, _) | (_, EndLimit::Unavailable) => EndLimit::Unavailable,
        (EndLimit::Exact(a), EndLimit::Exact(b)) => EndLimit::Exact(a * b),
        (a, b) => {
            let (a, b) = (a.clone(), b.clone());
            EndLimit::numeric(move |p| {
                let x = a.value(p).expect("checked available").to_real(p);
                let y = b.value(p).expect("checked available").to_real(p);
                x * y
            })
        }
    };
    let mut out = SeriesFn::from_coeffs(
        format!("({})·({})", u.name, v.name),
        u.anchor.clone(),
        u.right_end.clone(),
        product,
        end_limit,
    )?
    .truncated(terms);
    out.sign = SignPattern::Unknown;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> (ExactReal, ExactReal) {
        (ExactReal::zero(), ExactReal::integer(1))
    }

    fn poly_series(name: &str, c: &[i64]) -> SeriesFn {
        let (a, b) = interval();
        let coeffs: Vec<ExactReal> = c.iter().map(|&v| ExactReal::integer(v)).collect();
        let end = coeffs.iter().fold(ExactReal::zero(), |acc, v| &acc + v);
        SeriesFn::from_coeffs(name, a, b, coeffs, EndLimit::Exact(end)).unwrap()
    }

    #[test]
    fn multiplicative_identity() {
        let one = poly_series("one", &[1]);
        let v = poly_series("v", &[3, -1, 4, 1, 5]);
        let p = series_mul(&one, &v, 5).unwrap();
        for k in 0..5 {
            assert_eq!(p.coeff(k).unwrap(), v.coeff(k).unwrap());
        }
        assert!(matches!(p.coeff(5), Err(Error::Truncated { .. })));
    }

    #[test]
    fn x_times_x() {
        let x = poly_series("x", &[0, 1]);
        let p = series_mul(&x, &x, 3).unwrap();
        assert_eq!(
            p.coeffs_through(2).unwrap(),
            vec![ExactReal::zero(), ExactReal::zero(), ExactReal::integer(1)]
        );
    }

    #[test]
    fn mismatched_intervals_rejected() {
        let x = poly_series("x", &[0, 1]);
        let y = SeriesFn::from_coeffs(
            "y",
            ExactReal::zero(),
            ExactReal::integer(2),
            vec![],
            EndLimit::Unavailable,
        )
        .unwrap();
        assert!(matches!(
            series_mul(&x, &y, 3),
            Err(Error::IntervalMismatch { .. })
        ));
    }

    #[test]
    fn mirror_twice_is_identity() {
        let f = poly_series("f", &[1, -2, 3, -4, 5]);
        let back = f.mirror().mirror();
        for k in 0..6 {
            assert_eq!(back.coeff(k).unwrap(), f.coeff(k).unwrap());
        }
        let left = f.mirror();
        assert_eq!(left.coeff(1).unwrap(), ExactReal::integer(2));
        assert_eq!(left.anchor(), &ExactReal::integer(1));
    }

    #[test]
    fn minus_constant_shifts_limit() {
        let f = poly_series("f", &[2, -1]).with_sign(SignPattern::AllNonposAfterConst);
        let g = f.minus_constant(&ExactReal::integer(2));
        assert_eq!(g.coeff(0).unwrap(), ExactReal::zero());
        assert_eq!(g.sign_pattern(), &SignPattern::AllNonpos);
        match g.end_limit() {
            EndLimit::Exact(e) => assert_eq!(e, &ExactReal::integer(-1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_interval_rejected() {
        let r = SeriesFn::from_coeffs(
            "bad",
            ExactReal::integer(1),
            ExactReal::integer(1),
            vec![],
            EndLimit::Unavailable,
        );
        assert!(r.is_err());
    }
}
