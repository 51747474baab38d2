//! Splitting off finitely many negative coefficients.
//!
//! For `f = Σ c_k (x - a)^k` whose negative coefficients sit at a finite
//! index set `J`, `F = f - Σ_{j∈J} c_j (x - a)^j` has coefficients
//! `C_k = max(c_k, 0)` and the first/second approximations of `F`, shifted
//! back by the negative part, bound `f` from below and above.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{Coeff, ExactReal};
use crate::poly::Poly;
use crate::series::{EndLimit, SeriesFn, SignPattern};
use crate::taylor::approx::{exact_poly, first_taylor, second_taylor};

/// Number of indices past `scan_limit` that are spot-checked against the
/// declaration.
const TAIL_WINDOW: usize = 16;

#[derive(Clone, Debug)]
pub struct SplitSeries {
    /// The function as given.
    pub base: SeriesFn,
    /// `-base` when `base` was non-positive and had to be negated before
    /// splitting; bounds are negated and swapped back on the way out.
    pub negated: bool,
    /// `F`, with coefficients `C_k`.
    pub nonneg: SeriesFn,
    /// `(j, c_j)` for every negative coefficient of the split function.
    pub negative_part: Vec<(usize, ExactReal)>,
}

impl SplitSeries {
    /// `Σ c_j (x - a)^j` over the negative part.
    pub fn negative_poly(&self) -> Poly<Coeff> {
        let top = self
            .negative_part
            .iter()
            .map(|(j, _)| *j)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![ExactReal::default(); top + 1];
        for (j, c) in &self.negative_part {
            coeffs[*j] = c.clone();
        }
        exact_poly(self.nonneg.anchor(), coeffs)
    }

    pub fn max_negative_index(&self) -> Option<usize> {
        self.negative_part.iter().map(|(j, _)| *j).max()
    }

    /// Map bounds for the split function back to bounds for `base`.
    fn orient(&self, lower: Poly<Coeff>, upper: Poly<Coeff>) -> (Poly<Coeff>, Poly<Coeff>) {
        if self.negated {
            (upper.neg(), lower.neg())
        } else {
            (lower, upper)
        }
    }
}

/// Decompose `f` per its declared sign pattern, scanning indices
/// `0..scan_limit` (plus a short tail window) to confirm the declaration.
pub fn split_series(f: &SeriesFn, scan_limit: usize) -> Result<SplitSeries> {
    match f.sign_pattern() {
        SignPattern::AllNonpos | SignPattern::AllNonposAfterConst => {
            let mut inner = split_checked(&f.negated(), scan_limit)?;
            inner.base = f.clone();
            inner.negated = true;
            Ok(inner)
        }
        _ => split_checked(f, scan_limit),
    }
}

fn split_checked(f: &SeriesFn, scan_limit: usize) -> Result<SplitSeries> {
    let declared: BTreeSet<usize> = match f.sign_pattern() {
        SignPattern::AllNonneg => BTreeSet::new(),
        SignPattern::Mixed(idx) => idx.iter().copied().collect(),
        other => {
            return Err(Error::Unsupported {
                name: f.name().to_string(),
                pattern: other.to_string(),
                hint: "splitting needs a declared finite set of negative indices".into(),
            })
        }
    };
    if let Some(&j) = declared.iter().find(|&&j| j >= scan_limit) {
        return Err(Error::Inconsistent {
            name: f.name().to_string(),
            index: j,
            detail: format!("declared negative index lies beyond the scan limit {scan_limit}"),
        });
    }
    let scan_end = f.valid_terms().map_or(scan_limit + TAIL_WINDOW, |v| {
        v.min(scan_limit + TAIL_WINDOW)
    });
    let mut negative_part = Vec::new();
    for k in 0..scan_end {
        let c = f.coeff(k)?;
        let negative = c.signum() == Ordering::Less;
        match (negative, declared.contains(&k)) {
            (true, true) => negative_part.push((k, c)),
            (false, false) => {}
            (true, false) => {
                return Err(Error::Inconsistent {
                    name: f.name().to_string(),
                    index: k,
                    detail: "negative coefficient at an index declared non-negative".into(),
                })
            }
            (false, true) => {
                return Err(Error::Inconsistent {
                    name: f.name().to_string(),
                    index: k,
                    detail: "index declared negative but coefficient is non-negative".into(),
                })
            }
        }
    }

    let skip: BTreeSet<usize> = negative_part.iter().map(|(j, _)| *j).collect();
    let source = f.clone();
    let width = f.width();
    let shift = negative_part
        .iter()
        .fold(ExactReal::default(), |acc, (j, c)| {
            &acc + &(c * &width.pow(*j as u32))
        });
    let end_limit = match f.end_limit() {
        EndLimit::Exact(e) => EndLimit::Exact(e - &shift),
        EndLimit::Numeric(g) => {
            let g = g.clone();
            EndLimit::numeric(move |p| g(p) - crate::scalar::ToReal::to_real(&shift, p))
        }
        EndLimit::Unavailable => EndLimit::Unavailable,
    };
    let mut nonneg = SeriesFn::new(
        format!("{}⁺", f.name()),
        f.anchor().clone(),
        f.right_end().clone(),
        move |k| {
            if skip.contains(&k) {
                ExactReal::default()
            } else {
                source.coeff(k).unwrap_or_default()
            }
        },
        end_limit,
    )?
    .with_sign(SignPattern::AllNonneg);
    if let Some(v) = f.valid_terms() {
        nonneg = nonneg.truncated(v);
    }
    Ok(SplitSeries {
        base: f.clone(),
        negated: false,
        nonneg,
        negative_part,
    })
}

/// Lower and upper bounds for `base` of degree `n` built from `F` and the
/// negative part:
///
/// lower = `Σ_{k<=n} C_k (x-a)^k + Σ_J c_j (x-a)^j`,
/// upper = second approximation of `F` of degree `n` plus the same negative part.
pub fn split_bounds(s: &SplitSeries, n: usize, prec: u32) -> Result<(Poly<Coeff>, Poly<Coeff>)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "bound degree must be at least 1".into(),
        ));
    }
    let neg = s.negative_poly();
    let lower = first_taylor(&s.nonneg, n)?.checked_add(&neg)?;
    let upper = second_taylor(&s.nonneg, n, prec)?.checked_add(&neg)?;
    Ok(s.orient(lower, upper))
}

/// Once `n` exceeds every negative index, the plain first and second
/// approximations of the split function are themselves the bounds.
pub fn high_degree_bounds(
    s: &SplitSeries,
    n: usize,
    prec: u32,
) -> Result<(Poly<Coeff>, Poly<Coeff>)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "bound degree must be at least 1".into(),
        ));
    }
    if let Some(j) = s.max_negative_index() {
        if n <= j {
            return Err(Error::DegreeTooSmall {
                degree: n,
                index: j,
            });
        }
    }
    let working = if s.negated {
        s.base.negated()
    } else {
        s.base.clone()
    };
    let lower = first_taylor(&working, n)?;
    let upper = second_taylor(&working, n, prec)?;
    Ok(s.orient(lower, upper))
}
